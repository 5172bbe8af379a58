#include "dstau/json_io.hpp"

namespace dstau {

namespace {

Json terms_json(const DiffPoly& p) {
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json mono = Json::array();
        for (const auto& f : m.factors()) mono.push_back({f.var.alpha, f.var.order, f.exp});
        terms.push_back({{"coeff", c.str()}, {"monomial", mono}});
    }
    return terms;
}

DiffPoly terms_from_json(const Json& terms) {
    if (!terms.is_array()) throw Error("malformed polynomial JSON: \"terms\" must be an array");
    DiffPoly p;
    for (const auto& t : terms) {
        if (!t.contains("coeff") || !t.contains("monomial")) throw Error("malformed polynomial JSON term");
        DiffPoly term(Rational::parse(t.at("coeff").get<std::string>()));
        for (const auto& f : t.at("monomial")) {
            if (!f.is_array() || f.size() != 3) throw Error("malformed monomial factor");
            term = term * pow(DiffPoly::variable(f[0].get<int>(), f[1].get<int>()), f[2].get<int>());
        }
        p += term;
    }
    return p;
}

}  // namespace

Json to_json(const DiffPoly& p) { return Json{{"terms", terms_json(p)}}; }

DiffPoly diffpoly_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("terms")) throw Error("malformed polynomial JSON: missing \"terms\"");
    return terms_from_json(j.at("terms"));
}

Json to_json(const EpsSeries& s) {
    Json comps = Json::array();
    for (int q = 0; q <= s.order(); ++q) comps.push_back({{"eps", q}, {"terms", terms_json(s[q])}});
    return Json{{"components", comps}};
}

EpsSeries series_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("components")) throw Error("malformed series JSON: missing \"components\"");
    int K = -1;
    for (const auto& c : j.at("components")) K = std::max(K, c.at("eps").get<int>());
    if (K < 0) throw Error("malformed series JSON: no components");
    EpsSeries s(K);
    for (const auto& c : j.at("components")) s.add_to(c.at("eps").get<int>(), terms_from_json(c.at("terms")));
    return s;
}

namespace {

Json side_tagged(const std::vector<EpsSeries>& xs, const char* side) {
    Json out = Json::array();
    for (const auto& x : xs) {
        Json s = to_json(x);
        s["side"] = side;
        out.push_back(s);
    }
    return out;
}

std::vector<EpsSeries> read_side(const Json& arr, const std::string& side) {
    std::vector<EpsSeries> out;
    for (const auto& s : arr) {
        if (s.value("side", "") != side) throw Error("malformed Miura pair JSON: expected side \"" + side + "\"");
        out.push_back(series_from_json(s));
    }
    return out;
}

}  // namespace

Json to_json(const MiuraPair& pair) {
    Json out{{"eps_order", pair.eps_order},
             {"jet_depth", pair.jet_depth},
             {"kind", pair.forward.kind == JetKind::difference ? "difference" : "differential"}};
    out["forward"] = side_tagged(pair.forward.values, "u");
    out["inverse"] = side_tagged(pair.inverse, "v");
    out["stage_jet_order"] = pair.stage_jet_order;
    return out;
}

MiuraPair miura_pair_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("forward") || !j.contains("inverse"))
        throw Error("malformed Miura pair JSON: missing \"forward\" or \"inverse\"");
    MiuraPair pair;
    JetKind kind = j.value("kind", "differential") == "difference" ? JetKind::difference : JetKind::differential;
    pair.forward = MiuraTuple(read_side(j.at("forward"), "u"), kind);
    pair.inverse = read_side(j.at("inverse"), "v");
    pair.eps_order = j.at("eps_order").get<int>();
    pair.jet_depth = j.at("jet_depth").get<int>();
    if (j.contains("stage_jet_order")) pair.stage_jet_order = j.at("stage_jet_order").get<std::vector<int>>();
    return pair;
}

}  // namespace dstau
