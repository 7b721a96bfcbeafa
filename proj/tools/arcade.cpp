#include <cstdio>

int main() {
    std::puts("arcade: command-line interface under construction");
    return 0;
}
