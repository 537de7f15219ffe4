// Certifies f|U(m) = F^a_m h_m (mod m) for m = 5 and lists the first
// families pbar(5 l^3 n) = 0 (mod 5), spot-checking each one.

#include "overpart/report.hpp"

#include <iostream>

int main()
{
    using namespace overpart;
    ResidueStore store(std::nullopt, 5'000'000);

    emit_reports(std::cout, {verify_gm_congruence(prime_params(5), store)}, OutputFormat::Text);

    SearchOptions opt;
    opt.lmax = 60;
    opt.verify = true;
    opt.spot_count = 3;
    emit_families(std::cout, search_families(5, opt, store), OutputFormat::Text);
}
