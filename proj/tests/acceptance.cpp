// Runs the acceptance criteria and prints one line per criterion.
// Usage: acceptance [--out report.json]

#include <fstream>
#include <iostream>
#include <string>

#include "bergman/checks.hpp"

int main(int argc, char** argv) {
    std::string out;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--out") out = argv[i + 1];
    }
    const auto doc = bergman::checks::acceptance_suite();
    for (const auto& r : doc.records()) {
        std::cout << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.seconds << " s) " << r.description
                  << "\n    " << r.observed.dump() << '\n';
    }
    std::cout << doc.passed() << "/" << doc.records().size() << " acceptance criteria passed\n";
    if (!out.empty()) std::ofstream(out) << doc.to_json().dump(2) << '\n';
    return doc.all_pass() ? 0 : 1;
}
