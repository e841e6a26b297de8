#include <cstdio>
int main() { std::printf("[FAIL] pending\n"); return 1; }
