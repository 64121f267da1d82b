#pragma once

#include <stdexcept>
#include <string>

namespace wvd {

// Failure kinds raised by the kernels and drivers. Tests match on these
// rather than on message text.
enum class ErrorCode {
    coincident_points,
    degenerate_triangle,
    degenerate_edge,
    degenerate_bisector,
    nonpositive_weight,
    invalid_radii,
    geodesics_intersect,
    no_intersection,
    invalid_sides,
    invalid_hexagon,
    infeasible_face,
    nonconvex_hinge,
    flip_limit_exceeded,
    switch_limit_exceeded,
    power_center_infeasible,
    inadmissible_weights,
    invalid_mesh,
    parse_error,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::coincident_points:       return "CoincidentPoints";
        case ErrorCode::degenerate_triangle:     return "DegenerateTriangle";
        case ErrorCode::degenerate_edge:         return "DegenerateEdge";
        case ErrorCode::degenerate_bisector:     return "DegenerateBisector";
        case ErrorCode::nonpositive_weight:      return "NonpositiveWeight";
        case ErrorCode::invalid_radii:           return "InvalidRadii";
        case ErrorCode::geodesics_intersect:     return "GeodesicsIntersect";
        case ErrorCode::no_intersection:         return "NoIntersection";
        case ErrorCode::invalid_sides:           return "InvalidSides";
        case ErrorCode::invalid_hexagon:         return "InvalidHexagon";
        case ErrorCode::infeasible_face:         return "InfeasibleFace";
        case ErrorCode::nonconvex_hinge:         return "NonConvexHinge";
        case ErrorCode::flip_limit_exceeded:     return "FlipLimitExceeded";
        case ErrorCode::switch_limit_exceeded:   return "SwitchLimitExceeded";
        case ErrorCode::power_center_infeasible: return "PowerCenterInfeasible";
        case ErrorCode::inadmissible_weights:    return "InadmissibleWeights";
        case ErrorCode::invalid_mesh:            return "InvalidMesh";
        case ErrorCode::parse_error:             return "ParseError";
    }
    return "UnknownError";
}

class GeomError : public std::runtime_error {
public:
    GeomError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw GeomError(code, what);
}

// Single tolerance context threaded through all predicates. Degeneracy
// tests use a relative epsilon scaled by the magnitude of the inputs.
struct Tolerance {
    double rel = 1e-12;          // relative epsilon for degeneracy tests
    double clamp_slack = 1e-9;   // acosh/asinh arguments this close to the
                                 // domain boundary are clamped, beyond is an error
    double tie_rel = 1e-9;       // |margin| <= tie_rel * hinge scale classifies a tie

    double scaled(double magnitude) const {
        double m = magnitude < 0 ? -magnitude : magnitude;
        return rel * (m > 1.0 ? m : 1.0);
    }
};

} // namespace wvd
