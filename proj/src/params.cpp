#include "landis/params.hpp"

#include <string>

#include "landis/errors.hpp"

namespace landis {

void Params::validate() const {
    if (N != 1 && N != 2) throw InputError("N must be 1 or 2, got " + std::to_string(N));
    if (!(s > 0.0 && s < 1.0)) throw InputError("s must lie in (0,1)");
    if (!(lambda > 0.0)) throw InputError("lambda must be positive");
    if (!(Lambda >= lambda)) throw InputError("Lambda must be >= lambda");
    if (!std::isfinite(Lambda)) throw InputError("Lambda must be finite");
}

}  // namespace landis
