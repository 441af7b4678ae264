#include <cstdio>
int main(){ std::puts("pbsim"); return 0; }
