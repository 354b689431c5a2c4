#include "brp/roughpath.hpp"

#include <cstdlib>

namespace brp {

int gamma_to_level(const Rational& gamma) {
    if (sgn(gamma) <= 0 || gamma >= 1) throw std::invalid_argument("gamma must lie in (0,1)");
    Rational inv = 1 / gamma;
    mpz_class q = inv.get_num() / inv.get_den();
    return static_cast<int>(q.get_si());
}

int default_threads() {
    if (const char* v = std::getenv("BRP_THREADS")) {
        int k = std::atoi(v);
        if (k > 0) return k;
    }
    return 1;
}

}  // namespace brp
