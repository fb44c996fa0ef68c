#include "billiards/table_io.hpp"

#include <cmath>
#include <fstream>

namespace billiards {

using nlohmann::json;

namespace {

BoundaryProfile profile_from_json(const json& j, std::vector<std::string>* warnings) {
    if (j.is_object() && j.contains("named")) {
        const json& n = j.at("named");
        const std::string kind = n.at("kind").get<std::string>();
        const auto k = profile_kind_from_string(kind);
        if (!k) throw InvalidParameterError("unknown named profile kind: " + kind);
        std::vector<double> params;
        if (n.contains("params")) params = n.at("params").get<std::vector<double>>();
        return named_profile(*k, params);
    }
    std::vector<double> coeffs;
    coeffs.push_back(j.value("a2", 0.0));
    coeffs.push_back(j.value("a4", 0.0));
    coeffs.push_back(j.value("a6", 0.0));
    int extra = 8;
    while (j.contains("a" + std::to_string(extra))) {
        coeffs.push_back(j.at("a" + std::to_string(extra)).get<double>());
        extra += 2;
    }
    std::optional<double> eps;
    if (j.contains("eps")) eps = j.at("eps").get<double>();
    return make_profile(coeffs, eps, warnings);
}

json profile_to_json(const BoundaryProfile& p) {
    return json{{"a2", p.a2()}, {"a4", p.a4()}, {"a6", p.a6()}, {"eps", p.eps}};
}

json complex_to_json(const Complex& c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

json opt_to_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

json opt_complex_to_json(const std::optional<Complex>& v) {
    return v ? complex_to_json(*v) : json(nullptr);
}

}  // namespace

TableConfig table_from_json(const json& j, std::vector<std::string>* warnings) {
    if (!j.contains("L")) throw InvalidParameterError("table config needs a chord length L");
    const double L = j.at("L").get<double>();
    const BoundaryProfile left = profile_from_json(j.at("left"), warnings);
    BoundaryProfile right = left;
    if (!j.contains("right") || (j.at("right").is_string() && j.at("right") == "same")) {
        // symmetric table
    } else {
        right = profile_from_json(j.at("right"), warnings);
    }
    return make_table(L, left, right);
}

json table_to_json(const TableConfig& table) {
    json j;
    j["L"] = table.L;
    j["left"] = profile_to_json(table.left);
    if (table.symmetric)
        j["right"] = "same";
    else
        j["right"] = profile_to_json(table.right);
    return j;
}

TableConfig load_table_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw InvalidParameterError("cannot open table file: " + path);
    json j;
    in >> j;
    return table_from_json(j, warnings);
}

TableConfig example_table(const std::string& name,
                          const std::vector<std::pair<std::string, double>>& params) {
    auto get = [&](const std::string& key, std::optional<double> fallback =
                                                std::nullopt) -> double {
        for (const auto& [k, v] : params)
            if (k == key) return v;
        if (fallback) return *fallback;
        throw InvalidParameterError("example '" + name + "' needs parameter --" + key);
    };
    if (name == "lemon") return lemon_table(get("L", 0.5));
    if (name == "ellipse") return ellipse_table(get("b"));
    if (name == "asymmetric-lemon")
        return asymmetric_lemon_table(get("r"), get("B"), get("R"));
    if (name == "half-ellipses") return half_ellipses_table(get("b0"), get("b1"));
    if (name == "eh-lens-shift") return eh_lens_shift_table(get("a"), get("s"));
    if (name == "eh-lens-deform") return eh_lens_deform_table(get("a"), get("p"), get("q"));
    throw InvalidParameterError("unknown example table: " + name);
}

AnalysisReport build_analysis_report(const TableConfig& table, const NormalFormOptions& opts) {
    AnalysisReport rep;
    json& j = rep.json;
    j["schema_version"] = 1;
    j["table"] = table_to_json(table);

    const CurvatureJet j0 = curvature_jet(table.left);
    const CurvatureJet j1 = curvature_jet(table.right);

    StabilityReport stab = classify(table.L, j0, j1);

    // Closed-form twist values (independent of the jet pipeline).
    std::optional<double> f_tau1_orbit, f_tau2_orbit, f_tau1_map, f_tau2_map;
    try {
        if (table.symmetric && !j0.flat) {
            f_tau1_map = tau1_sym(table.L, j0.R, j0.R2);
            f_tau1_orbit = 2.0 * *f_tau1_map;
            if (stab.nonres4) {
                f_tau2_map = tau2_sym(table.L, j0.R, j0.R2, j0.R4);
                f_tau2_orbit = 2.0 * *f_tau2_map;
            }
        } else {
            const TwistInput in = TwistInput::make(table.L, j0, j1);
            f_tau1_orbit = tau1_asym(in);
            f_tau1_map = f_tau1_orbit;
            if (stab.nonres4) {
                f_tau2_orbit = tau2_asym(in);
                f_tau2_map = f_tau2_orbit;
            }
        }
    } catch (const Error&) {
        // Formula refusals (poles, non-elliptic branches) leave the fields null.
    }

    NormalFormResult nf;
    bool have_nf = false;
    try {
        nf = analyze(table, opts);
        have_nf = true;
    } catch (const StabilityError& e) {
        j["stability_error"] = e.what();
        rep.refused = true;
    }

    attach_moser_verdict(stab, f_tau1_orbit ? f_tau1_orbit
                                            : (have_nf ? nf.tau1_orbit : std::nullopt),
                         f_tau2_orbit ? f_tau2_orbit
                                      : (have_nf ? nf.tau2_orbit : std::nullopt));

    j["stability"] = json{{"class", to_string(stab.cls)},
                          {"family", stab.family_A ? "A" : "B"},
                          {"nonres4", stab.nonres4},
                          {"nonres6", stab.nonres6},
                          {"moser_stable",
                           stab.moser_stable ? json(*stab.moser_stable) : json(nullptr)},
                          {"notes", stab.notes}};

    j["tau"] = json{{"tau1_formula_map", opt_to_json(f_tau1_map)},
                    {"tau2_formula_map", opt_to_json(f_tau2_map)},
                    {"tau1_formula_orbit", opt_to_json(f_tau1_orbit)},
                    {"tau2_formula_orbit", opt_to_json(f_tau2_orbit)}};

    if (!have_nf) return rep;

    j["linear"] = json{{"lambda_re", nf.linear.lambda.real()},
                       {"lambda_im", nf.linear.lambda.imag()},
                       {"theta", nf.linear.theta},
                       {"eta", nf.linear.eta},
                       {"a10", nf.linear.a10},
                       {"a01", nf.linear.a01},
                       {"b10", nf.linear.b10},
                       {"b01", nf.linear.b01}};
    j["resonances"] = json{{"lambda3", nf.resonances.lambda3},
                           {"lambda4", nf.resonances.lambda4},
                           {"lambda6", nf.resonances.lambda6}};
    j["c03"] = complex_to_json(nf.c03);
    j["verdict"] = to_string(nf.verdict);
    j["notes"] = nf.notes;

    j["tau"]["tau1_map"] = opt_to_json(nf.tau1_map);
    j["tau"]["tau2_map"] = opt_to_json(nf.tau2_map);
    j["tau"]["tau1_orbit"] = opt_to_json(nf.tau1_orbit);
    j["tau"]["tau2_orbit"] = opt_to_json(nf.tau2_orbit);
    if (nf.tau1_orbit && f_tau1_orbit)
        j["tau"]["residual_tau1"] = std::fabs(*nf.tau1_orbit - *f_tau1_orbit);
    if (nf.tau2_orbit && f_tau2_orbit)
        j["tau"]["residual_tau2"] = std::fabs(*nf.tau2_orbit - *f_tau2_orbit);

    j["jacobi"] = json{{"order3_residual", nf.jacobi3_residual},
                       {"order5_residual", opt_to_json(nf.jacobi5_residual)}};

    json coeffs;
    coeffs["c3"] = json::array();
    for (const auto& c : nf.cjet.c3) coeffs["c3"].push_back(complex_to_json(c));
    coeffs["c5"] = json::array();
    for (const auto& c : nf.cjet.c5) coeffs["c5"].push_back(complex_to_json(c));
    if (nf.order3) {
        coeffs["d"] = json{{"d30", complex_to_json(nf.order3->d30)},
                           {"d21", complex_to_json(nf.order3->d21)},
                           {"d12", complex_to_json(nf.order3->d12)},
                           {"d03", complex_to_json(nf.order3->d03)}};
        coeffs["p3"] = nf.order3->p3;
        coeffs["q3"] = nf.order3->q3;
    }
    if (nf.order5) {
        coeffs["C5"] = json::array();
        for (const auto& c : nf.order5->C5) coeffs["C5"].push_back(complex_to_json(c));
        coeffs["D"] = json{{"D50", opt_complex_to_json(nf.order5->D50)},
                           {"D41", opt_complex_to_json(nf.order5->D41)},
                           {"D32", complex_to_json(nf.order5->D32)},
                           {"D23", complex_to_json(nf.order5->D23)},
                           {"D14", opt_complex_to_json(nf.order5->D14)},
                           {"D05", opt_complex_to_json(nf.order5->D05)}};
        coeffs["p5"] = nf.order5->p5;
        coeffs["q5"] = nf.order5->q5;
        coeffs["A5"] = nf.order5->A5;
        coeffs["B5"] = nf.order5->B5;
    }
    j["coefficients"] = std::move(coeffs);

    if (nf.verdict != Verdict::Ok || !nf.tau2_orbit) rep.refused = true;
    return rep;
}

}  // namespace billiards
