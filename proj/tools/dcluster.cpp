#include <iostream>

int main(int, char**) {
    std::cerr << "cli under construction\n";
    return 2;
}
