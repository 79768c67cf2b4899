#include <cstdio>

int main() {
    std::puts("liverec: work in progress");
    return 0;
}
