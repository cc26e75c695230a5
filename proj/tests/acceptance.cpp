// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <iostream>
#include <sstream>

#include "subtle/checks.hpp"
#include "subtle/cli.hpp"

int main()
{
    subtle::checks::SuiteConfig c;
    c.golden_dir = SUBTLE_GOLDEN_DIR;
    c.runner = [](const std::vector<std::string>& argv, std::string& out) {
        std::ostringstream o, e;
        const int code = subtle::cli::run(argv, o, e);
        out = o.str();
        return code;
    };
    // criteria run one at a time so each line appears as soon as it is known
    using F = subtle::checks::CriterionResult (*)(const subtle::checks::SuiteConfig&);
    const F all[] = {subtle::checks::criterion_bu_decomposition, subtle::checks::criterion_kernel,
                     subtle::checks::criterion_diagonal,         subtle::checks::criterion_colimit,
                     subtle::checks::criterion_twist,            subtle::checks::criterion_groebner_oracle,
                     subtle::checks::criterion_motives,          subtle::checks::criterion_sq1,
                     subtle::checks::criterion_specialization,   subtle::checks::criterion_golden};
    int failed = 0;
    for (F f : all) {
        const auto r = f(c);
        std::cout << r.line() << " (" << r.seconds << " s)" << std::endl;
        failed += !r.pass;
    }
    std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
    return failed ? 1 : 0;
}
