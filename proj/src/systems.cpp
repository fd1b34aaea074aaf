#include "silverreach/systems.hpp"

#include <cmath>

namespace silverreach {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, message);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

CoupledSystem::CoupledSystem(double pi1, double pi2, double v1, double v2)
    : pi1(pi1), pi2(pi2), v1(v1), v2(v2) {
    require(finite(pi1) && finite(pi2) && finite(v1) && finite(v2),
            "coupled system parameters must be finite");
    require(pi1 > 0.0 && pi2 > 0.0, "time constants pi1, pi2 must be positive");
    require(v1 != 0.0 && v2 != 0.0, "input gains v1, v2 must be nonzero");
}

FirstOrderPair::FirstOrderPair(double alpha1, double alpha2, double beta1, double beta2)
    : alpha1(alpha1), alpha2(alpha2), beta1(beta1), beta2(beta2) {
    require(finite(alpha1) && finite(alpha2) && finite(beta1) && finite(beta2),
            "first-order pair parameters must be finite");
    require(alpha1 != 0.0 && alpha2 != 0.0, "pole magnitudes alpha1, alpha2 must be nonzero");
    require(beta1 != 0.0 && beta2 != 0.0, "input gains beta1, beta2 must be nonzero");
}

StabilityClass classify(const FirstOrderPair& sys) {
    if (sys.alpha1 > 0.0 && sys.alpha2 > 0.0) return StabilityClass::BothStable;
    if (sys.alpha1 < 0.0 && sys.alpha2 < 0.0) return StabilityClass::BothUnstable;
    return StabilityClass::Mixed;
}

ModalPairs modal_pairs(const CoupledSystem& sys) {
    const double b1 = sys.v1 * sys.pi1 * std::sqrt(1.0 + sys.pi1 * sys.pi1) / 2.0;
    const double b2 = sys.v2 * sys.pi2 * std::sqrt(1.0 + sys.pi2 * sys.pi2) / 2.0;
    return ModalPairs{
        FirstOrderPair(-sys.pi1, -sys.pi2, b1, b2),
        FirstOrderPair(sys.pi1, sys.pi2, -b1, -b2),
    };
}

}  // namespace silverreach
