#include <iostream>

#include "rk/selftest.hpp"

int main() {
    int failed = 0;
    for (const auto& c : rk::selftest::criteria()) {
        const auto r = rk::selftest::run(c);
        std::cout << (r.pass ? "PASS" : "FAIL") << ' ' << c.id << ' ' << c.name << ": " << r.detail << '\n';
        if (!r.pass) ++failed;
    }
    std::cout << (rk::selftest::criteria().size() - failed) << '/' << rk::selftest::criteria().size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
