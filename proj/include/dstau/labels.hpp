#pragma once

#include <compare>
#include <map>
#include <string>

#include "dstau/diffpoly.hpp"

namespace dstau {

/// Time label t_{a,k}: exponent index a (1-based) and shift k >= 0.
struct FlowLabel {
    int a = 1;
    int k = 0;
    auto operator<=>(const FlowLabel&) const = default;
};
std::string to_string(const FlowLabel& f);
/// Parses "a:k".
FlowLabel parse_flow_label(const std::string& text);

struct OmegaKey {
    int a = 1, k1 = 0, b = 1, k2 = 0;
    auto operator<=>(const OmegaKey&) const = default;
};
std::string to_string(const OmegaKey& k);
using OmegaTable = std::map<OmegaKey, DiffPoly>;

}  // namespace dstau
