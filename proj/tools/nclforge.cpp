#include <cstdio>
int main() { std::puts("nclforge: command-line interface under construction"); return 0; }
