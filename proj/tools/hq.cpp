#include <cstdio>
int main() { std::printf("hq: not wired yet\n"); return 1; }
