#include <cstdio>

int main() {
    std::puts("bosegas: CLI wiring pending");
    return 0;
}
