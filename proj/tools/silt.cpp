#include <cstdio>

int main() {
    std::puts("silt: placeholder");
    return 0;
}
