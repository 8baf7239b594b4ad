#include "minkcurve/error.hpp"

namespace mink {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::parse: return "parse";
        case Errc::unknown_function: return "unknown_function";
        case Errc::unbound_variable: return "unbound_variable";
        case Errc::domain: return "domain";
        case Errc::pole: return "pole";
        case Errc::degenerate_curvature: return "degenerate_curvature";
        case Errc::lightlike_normal: return "lightlike_normal";
        case Errc::straight_null_line: return "straight_null_line";
        case Errc::degenerate_frame: return "degenerate_frame";
        case Errc::not_normalized: return "not_normalized";
        case Errc::precondition: return "precondition";
        case Errc::kappa_not_one: return "kappa_not_one";
        case Errc::sigma_singular: return "sigma_singular";
        case Errc::range: return "range";
        case Errc::empty_grid: return "empty_grid";
        case Errc::insufficient_samples: return "insufficient_samples";
        case Errc::no_convergence: return "no_convergence";
        case Errc::frame_blowup: return "frame_blowup";
        case Errc::invalid_argument: return "invalid_argument";
        case Errc::internal: return "internal";
    }
    return "unknown";
}

} // namespace mink
