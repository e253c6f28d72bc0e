#include "opspec/json_io.hpp"

namespace opspec {

Json to_json(const Rat& r) { return r.str(); }

Json to_json(const GQ& z) { return Json{{"re", z.re.str()}, {"im", z.im.str()}}; }

Json to_json(const ExtNat& n) { return n.str(); }

Json to_json(const PointData& p) {
    return Json{{"alpha", to_json(p.alpha)},
                {"beta_bar", to_json(p.betaBar)},
                {"beta_alg", to_json(p.beta_alg())},
                {"closed", p.closed}};
}

static const char* kind_name(AtomKind k) {
    switch (k) {
        case AtomKind::UShift: return "ushift";
        case AtomKind::UShiftAdj: return "ushift_adj";
        case AtomKind::BShift: return "bshift";
        default: return "diag";
    }
}

Json to_json(const OperatorExpr& e0) {
    OperatorExpr e = normalize(e0);
    Json atoms = Json::array();
    for (const Atom& at : e.atoms) {
        Json j{{"kind", kind_name(at.kind)}, {"mult", at.mult.str()}};
        if (at.is_shift()) {
            j["a"] = to_json(at.a);
            j["b"] = to_json(at.b);
        } else {
            Json vals = Json::array();
            for (const auto& v : at.values) vals.push_back(Json{to_json(v.first), v.second.str()});
            j["values"] = vals;
        }
        atoms.push_back(std::move(j));
    }
    return Json{{"atoms", atoms}};
}

Json to_json(const Predicate& p) {
    if (p.kind == Predicate::Kind::Circle)
        return Json{{"type", "circle"}, {"center", to_json(p.c)}, {"r2", p.r2.str()}};
    return Json{{"type", "point"}, {"p", to_json(p.c)}};
}

static Json node_to_json(const RegionExpr& r, std::int32_t idx) {
    const auto& n = r.nodes[idx];
    using Op = RegionExpr::Node::Op;
    switch (n.op) {
        case Op::Const: return Json{{"op", "const"}, {"value", n.cval}};
        case Op::Lt: return Json{{"op", "lt"}, {"pred", n.pred}};
        case Op::Eq: return Json{{"op", "eq"}, {"pred", n.pred}};
        case Op::AtPt: return Json{{"op", "at"}, {"pred", n.pred}};
        case Op::And:
            return Json{{"op", "and"}, {"a", node_to_json(r, n.a)}, {"b", node_to_json(r, n.b)}};
        case Op::Or:
            return Json{{"op", "or"}, {"a", node_to_json(r, n.a)}, {"b", node_to_json(r, n.b)}};
        case Op::Not: return Json{{"op", "not"}, {"a", node_to_json(r, n.a)}};
    }
    return {};
}

Json to_json(const RegionExpr& r) {
    Json preds = Json::array();
    for (const Predicate& p : r.preds) preds.push_back(to_json(p));
    return Json{{"predicates", preds}, {"formula", node_to_json(r, r.root)}};
}

Json to_json(const BasisAddress& a) {
    Json j{{"atom", a.atom}, {"copy", a.copy}};
    if (a.vec == BasisAddress::VecKind::Geometric) {
        j["vec"] = Json{{"type", "geometric"}, {"mu", to_json(a.mu)}};
    } else {
        j["vec"] = Json{{"type", "diag"}, {"value", a.value_index}, {"index", a.coord_index}};
    }
    return j;
}

static const char* target_name(CompletionTarget t) {
    switch (t) {
        case CompletionTarget::FLI: return "fli";
        case CompletionTarget::FRI: return "fri";
        default: return "inv";
    }
}

Json to_json(const CompletionCertificate& c) {
    Json j{{"target", target_name(c.target)}, {"lambda", to_json(c.at_lambda)}};
    if (c.kase == CompletionCertificate::Case::Infinite) {
        j["case"] = "infinite";
        j["rule"] = "round_robin_diagonal";
    } else {
        j["case"] = "finite";
        Json pairs = Json::array();
        for (const auto& [kb, ca] : c.pairs) pairs.push_back(Json{to_json(kb), to_json(ca)});
        j["pairs"] = pairs;
    }
    return j;
}

Json to_json(const CompletionReport& r) {
    Json failed = Json::array();
    for (char c : r.failed_conditions) failed.push_back(std::string(1, c));
    Json j{{"decision", r.decision ? "yes" : "no"}, {"failed_conditions", failed}};
    j["case"] = r.kase == CompletionReport::Case::None
                    ? "none"
                    : (r.kase == CompletionReport::Case::Finite ? "finite" : "infinite");
    j["zero_suffices"] = r.zero_suffices;
    if (r.certificate) j["certificate"] = to_json(*r.certificate);
    return j;
}

Json to_json(const NumericPointData& e) {
    const char* ce = e.closed_evidence == ClosedEvidence::StableGap     ? "stable_gap"
                     : e.closed_evidence == ClosedEvidence::ShrinkingGap ? "shrinking_gap"
                                                                         : "inconclusive";
    Json per = Json::array();
    for (const auto& ps : e.per_size) {
        per.push_back(Json{{"n", ps.n},
                           {"dim", ps.dim},
                           {"alpha_n", ps.alpha_n},
                           {"beta_n", ps.beta_n},
                           {"small_sigma", ps.small_sigma},
                           {"edge_mass_right", ps.edge_mass_right},
                           {"edge_mass_left", ps.edge_mass_left},
                           {"non_null_min", ps.non_null_min}});
    }
    return Json{{"alpha_est", e.alpha_est},
                {"beta_est", e.beta_est},
                {"closed_evidence", ce},
                {"alpha_capped", e.alpha_capped},
                {"beta_capped", e.beta_capped},
                {"consistent", e.consistent},
                {"per_size", per}};
}

Json to_json(const Verdict& v) {
    const char* k = v.kind == Verdict::Kind::Exact         ? "exact"
                    : v.kind == Verdict::Kind::SampledPass ? "sampled_pass"
                    : v.kind == Verdict::Kind::Fail        ? "fail"
                                                           : "inconclusive";
    Json j{{"verdict", k}};
    if (v.kind == Verdict::Kind::SampledPass) j["samples"] = v.samples;
    if (!v.detail.empty()) j["detail"] = v.detail;
    return j;
}

Json to_json(const CellDecomp& cd) {
    Json cells = Json::array();
    for (const auto& c : cd.cells) {
        const char* k = nullptr;
        switch (c.kind) {
            case CellDecomp::CellKind::Face: k = "face"; break;
            case CellDecomp::CellKind::Arc: k = "arc"; break;
            case CellDecomp::CellKind::Loop: k = "loop"; break;
            case CellDecomp::CellKind::Vertex: k = "vertex"; break;
            case CellDecomp::CellKind::IsolatedPoint: k = "point"; break;
        }
        Json j{{"kind", k},
               {"sample_approx", Json{c.sample.x_double(), c.sample.y_double()}},
               {"circle_sign", Json::array()},
               {"point_eq", Json::array()}};
        for (auto s : c.circle_sign) j["circle_sign"].push_back(static_cast<int>(s));
        for (auto s : c.point_eq) j["point_eq"].push_back(static_cast<int>(s));
        if (c.kind == CellDecomp::CellKind::Face) j["unbounded"] = c.unbounded;
        if (c.circle >= 0) j["circle"] = c.circle;
        cells.push_back(std::move(j));
    }
    Json preds = Json::array();
    for (const Predicate& p : cd.preds) preds.push_back(to_json(p));
    Json adj = Json::array();
    for (const auto& row : cd.adj) adj.push_back(row);
    return Json{{"predicates", preds}, {"cells", cells}, {"adjacency", adj}};
}

Rat rat_from_json(const Json& j) { return Rat::parse(j.get<std::string>()); }

GQ gq_from_json(const Json& j) {
    return {rat_from_json(j.at("re")), rat_from_json(j.at("im"))};
}

ExtNat extnat_from_json(const Json& j) {
    std::string s = j.get<std::string>();
    if (s == "inf") return ExtNat::infinity();
    Int n(s);
    return ExtNat::fin(n.get_ui());
}

OperatorExpr operator_from_json(const Json& j) {
    OperatorExpr e;
    for (const Json& ja : j.at("atoms")) {
        Atom at;
        std::string k = ja.at("kind").get<std::string>();
        if (k == "ushift") at.kind = AtomKind::UShift;
        else if (k == "ushift_adj") at.kind = AtomKind::UShiftAdj;
        else if (k == "bshift") at.kind = AtomKind::BShift;
        else if (k == "diag") at.kind = AtomKind::Diag;
        else throw std::invalid_argument("operator_from_json: unknown atom kind " + k);
        at.mult = extnat_from_json(ja.at("mult"));
        if (at.kind == AtomKind::Diag) {
            at.b = GQ(Rat(0));
            for (const Json& jv : ja.at("values"))
                at.values.push_back({gq_from_json(jv.at(0)), extnat_from_json(jv.at(1))});
        } else {
            at.a = gq_from_json(ja.at("a"));
            at.b = gq_from_json(ja.at("b"));
        }
        e.atoms.push_back(std::move(at));
    }
    validate(e);
    return e;
}

static std::int32_t node_from_json(RegionExpr& r, const Json& j) {
    using Op = RegionExpr::Node::Op;
    std::string op = j.at("op").get<std::string>();
    RegionExpr::Node n;
    if (op == "const") {
        n.op = Op::Const;
        n.cval = j.at("value").get<bool>();
    } else if (op == "lt" || op == "eq" || op == "at") {
        n.op = op == "lt" ? Op::Lt : (op == "eq" ? Op::Eq : Op::AtPt);
        n.pred = j.at("pred").get<std::int32_t>();
        if (n.pred < 0 || n.pred >= static_cast<std::int32_t>(r.preds.size()))
            throw std::invalid_argument("region_from_json: predicate index out of range");
    } else if (op == "and" || op == "or") {
        n.op = op == "and" ? Op::And : Op::Or;
        n.a = node_from_json(r, j.at("a"));
        n.b = node_from_json(r, j.at("b"));
    } else if (op == "not") {
        n.op = Op::Not;
        n.a = node_from_json(r, j.at("a"));
    } else {
        throw std::invalid_argument("region_from_json: unknown op " + op);
    }
    r.nodes.push_back(n);
    return static_cast<std::int32_t>(r.nodes.size() - 1);
}

RegionExpr region_from_json(const Json& j) {
    RegionExpr r;
    for (const Json& jp : j.at("predicates")) {
        std::string t = jp.at("type").get<std::string>();
        if (t == "circle")
            r.preds.push_back(Predicate::circle(gq_from_json(jp.at("center")),
                                                rat_from_json(jp.at("r2"))));
        else if (t == "point")
            r.preds.push_back(Predicate::point(gq_from_json(jp.at("p"))));
        else
            throw std::invalid_argument("region_from_json: unknown predicate type " + t);
    }
    r.root = node_from_json(r, j.at("formula"));
    return r;
}

BasisAddress address_from_json(const Json& j) {
    BasisAddress a;
    a.atom = j.at("atom").get<std::uint64_t>();
    a.copy = j.at("copy").get<std::uint64_t>();
    const Json& v = j.at("vec");
    std::string t = v.at("type").get<std::string>();
    if (t == "geometric") {
        a.vec = BasisAddress::VecKind::Geometric;
        a.mu = gq_from_json(v.at("mu"));
    } else if (t == "diag") {
        a.vec = BasisAddress::VecKind::DiagCoord;
        a.value_index = v.at("value").get<std::uint64_t>();
        a.coord_index = v.at("index").get<std::uint64_t>();
    } else {
        throw std::invalid_argument("address_from_json: unknown vector type " + t);
    }
    return a;
}

CompletionCertificate certificate_from_json(const Json& j) {
    CompletionCertificate c;
    std::string t = j.at("target").get<std::string>();
    if (t == "fli") c.target = CompletionTarget::FLI;
    else if (t == "fri") c.target = CompletionTarget::FRI;
    else if (t == "inv") c.target = CompletionTarget::Invertible;
    else throw std::invalid_argument("certificate_from_json: unknown target " + t);
    c.at_lambda = gq_from_json(j.at("lambda"));
    std::string k = j.at("case").get<std::string>();
    if (k == "infinite") {
        c.kase = CompletionCertificate::Case::Infinite;
    } else if (k == "finite") {
        c.kase = CompletionCertificate::Case::Finite;
        for (const Json& jp : j.at("pairs"))
            c.pairs.push_back({address_from_json(jp.at(0)), address_from_json(jp.at(1))});
    } else {
        throw std::invalid_argument("certificate_from_json: unknown case " + k);
    }
    return c;
}

std::string grid_to_pgm(const std::vector<std::vector<bool>>& grid) {
    std::size_t h = grid.size(), w = h ? grid[0].size() : 0;
    std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    for (const auto& row : grid)
        for (bool b : row) out.push_back(b ? static_cast<char>(255) : static_cast<char>(0));
    return out;
}

}  // namespace opspec
