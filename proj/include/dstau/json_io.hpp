#pragma once

#include <json.hpp>

#include "dstau/miura.hpp"
#include "dstau/series.hpp"

namespace dstau {

using Json = nlohmann::ordered_json;

/// {"terms":[{"coeff":"p/q","monomial":[[alpha,m,exp],...]},...]} in monomial order.
Json to_json(const DiffPoly& p);
DiffPoly diffpoly_from_json(const Json& j);

/// {"components":[{"eps":q,"terms":[...]},...]} listing every component 0..K.
Json to_json(const EpsSeries& s);
EpsSeries series_from_json(const Json& j);

/// {"eps_order","jet_depth","kind","forward":[series + "side":"u"],"inverse":[series + "side":"v"]}.
Json to_json(const MiuraPair& pair);
MiuraPair miura_pair_from_json(const Json& j);

}  // namespace dstau
