#pragma once

#include <stdexcept>
#include <string>

namespace heattrace {

enum class errc {
    non_positive_eigenvalue,
    non_increasing_eigenvalues,
    root_in_index_set,
    malformed_spec,
    pole_at,
    domain_error,
    not_trace_class,
    tol_error,
    outside_half_plane,
    unsupported_class,
    depth_insufficient,
    not_a_pole,
    radius_too_small,
    pole_on_line,
    non_integrable_line,
    insufficient_data,
    unknown_name,
};

/// Library-wide exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::non_positive_eigenvalue: return "NonPositiveEigenvalue";
    case errc::non_increasing_eigenvalues: return "NonIncreasingEigenvalues";
    case errc::root_in_index_set: return "RootInIndexSet";
    case errc::malformed_spec: return "MalformedSpec";
    case errc::pole_at: return "PoleAt";
    case errc::domain_error: return "DomainError";
    case errc::not_trace_class: return "NotTraceClass";
    case errc::tol_error: return "TolError";
    case errc::outside_half_plane: return "OutsideHalfPlane";
    case errc::unsupported_class: return "UnsupportedClass";
    case errc::depth_insufficient: return "DepthInsufficient";
    case errc::not_a_pole: return "NotAPole";
    case errc::radius_too_small: return "RadiusTooSmall";
    case errc::pole_on_line: return "PoleOnLine";
    case errc::non_integrable_line: return "NonIntegrableLine";
    case errc::insufficient_data: return "InsufficientData";
    case errc::unknown_name: return "UnknownName";
    }
    return "Unknown";
}

} // namespace heattrace
