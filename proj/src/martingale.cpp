#include "filtlab/martingale.hpp"

#include <cmath>
#include <sstream>

namespace filtlab {

std::string MartingaleVerdict::describe() const {
    std::ostringstream os;
    os << (pass ? "martingale" : "NOT a martingale") << " (tol " << tol << ", worst violation "
       << worst_violation;
    if (worst_time >= 0) os << " at time index " << worst_time << ", block " << worst_block;
    os << ")";
    return os.str();
}

MartingaleVerdict is_martingale(const AdaptedProcess& x, const Filtration& filtration,
                                const std::vector<double>& weights, double tol, int horizon) {
    FILTLAB_REQUIRE(is_adapted(x, filtration), MeasurabilityError,
                    "is_martingale: process is not adapted to the given filtration");
    MartingaleVerdict verdict;
    verdict.tol = tol;
    const int last = (horizon < 0) ? filtration.steps() : horizon;
    for (int k = 0; k < last; ++k) {
        const Partition& part = filtration.at(k);
        for (int b = 0; b < part.block_count(); ++b) {
            double mass = 0.0, sum = 0.0;
            for (int scenario : part.block(b)) {
                const double w = weights.at(static_cast<size_t>(scenario));
                mass += w;
                sum += w * (x.at(k + 1, scenario) - x.at(k, scenario));
            }
            const double violation = std::abs(sum / mass);
            if (violation > verdict.worst_violation) {
                verdict.worst_violation = violation;
                verdict.worst_time = k;
                verdict.worst_block = b;
            }
        }
    }
    verdict.pass = verdict.worst_violation <= tol;
    return verdict;
}

}  // namespace filtlab
