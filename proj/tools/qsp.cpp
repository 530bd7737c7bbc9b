#include <cstdio>
int main() { std::puts("qsp: not yet wired"); return 2; }
