#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace oq {

// Error taxonomy. Everything thrown by the library derives from oq::error so
// callers (notably the CLI) can map failures to exit codes uniformly.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unsupported root-system type, bad modulus regime, violated safety cap.
struct config_error : error {
    using error::error;
};

// Precondition violated by an argument (non-dominant weight where dominance
// is required, reflection not in the positive system, ...).
struct argument_error : error {
    using error::error;
};

// Two characters with irreconcilable truncation windows.
struct window_mismatch_error : error {
    using error::error;
};

// A product/truncation would need coefficients outside the retained region.
struct insufficient_depth_error : error {
    using error::error;
};

// A restricted-character provider has no entry for a weight the Steinberg
// expansion needs; `missing` lists the exact restricted weights required.
struct provider_gap_error : error {
    std::vector<std::vector<long long>> missing;
    provider_gap_error(const std::string& what, std::vector<std::vector<long long>> weights)
        : error(what), missing(std::move(weights)) {}
};

// An internal cross-check failed (e.g. a dimension formula disagreeing with
// a computed character). Indicates a bug, not user error.
struct internal_error : error {
    using error::error;
};

} // namespace oq
