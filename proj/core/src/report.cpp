#include "ivpfactor/report.hpp"

#include <sstream>

namespace ivp {

namespace {

std::vector<std::string> int_vector_strings(const std::vector<Int>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const Int& x : v) out.push_back(x.get_str());
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string vector_text(const std::vector<long>& v) {
    std::vector<std::string> parts;
    parts.reserve(v.size());
    for (long x : v) parts.push_back(std::to_string(x));
    return "(" + join(parts, ", ") + ")";
}

std::string vector_text(const std::vector<std::string>& v) { return "(" + join(v, ", ") + ")"; }

Json matrix_json(const AnalysisReport::Matrix& m) {
    return Json{{"row_labels", m.row_labels}, {"rows", m.rows}};
}

AnalysisReport::Matrix matrix_from_json(const Json& j) {
    AnalysisReport::Matrix m;
    m.row_labels = j.at("row_labels").get<std::vector<std::string>>();
    m.rows = j.at("rows").get<std::vector<std::vector<long>>>();
    return m;
}

Json element_json(const AnalysisReport::Element& e) {
    return Json{{"exponents", e.exponents}, {"denominator_exponent", e.denominator_exponent}};
}

AnalysisReport::Element element_from_json(const Json& j) {
    AnalysisReport::Element e;
    e.exponents = j.at("exponents").get<std::vector<long>>();
    e.denominator_exponent = j.at("denominator_exponent").get<long>();
    return e;
}

template <typename T>
Json opt_json(const std::optional<T>& v) {
    if (v) return Json(*v);
    return Json(nullptr);
}

template <typename T>
std::optional<T> opt_from_json(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

AnalysisReport::Element element_from(const IvpElement& e) {
    return {e.exponents, e.denominator_exponent};
}

}  // namespace

std::string format_element(const FactoredPolynomial& fp, const IvpElement& e) {
    std::string num;
    const auto& factors = fp.factors();
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (e.exponents[i] == 0) continue;
        if (!num.empty()) num += "*";
        num += "(" + format_polynomial(factors[i].g) + ")";
        if (e.exponents[i] != 1) num += "^" + std::to_string(e.exponents[i]);
    }
    if (num.empty()) num = "1";
    if (e.denominator_exponent == 0) return num;
    return num + " / " + fp.ctx().prime().get_str() + "^" +
           std::to_string(e.denominator_exponent);
}

AnalysisReport AnalysisReport::from(const FactoredPolynomial& fp, const Analysis& analysis,
                                    std::optional<long> claimed) {
    AnalysisReport r;
    r.input = format_factored(fp);
    r.prime = fp.ctx().prime().get_str();
    r.claimed_n = claimed;
    r.n = analysis.n;
    r.witness_depth = analysis.report.depth;
    for (const WitnessClass& wc : analysis.report.classes) {
        r.witnesses.push_back(
            {wc.cls.representative.get_str(), wc.witness.get_str(), wc.valuations});
    }
    auto fill_matrix = [](const FdpMatrix& m) {
        Matrix out;
        for (const Int& label : m.row_labels) out.row_labels.push_back(label.get_str());
        out.rows = m.rows;
        return out;
    };
    r.matrix = fill_matrix(analysis.matrix);
    r.reduced = fill_matrix(analysis.reduced);
    r.rank = static_cast<long>(analysis.reduced.rank);
    r.single_entry_rows = static_cast<long>(analysis.reduced.single_entry_rows);

    r.kernel_dimension = static_cast<long>(analysis.kernel.dimension);
    for (const auto& basis : analysis.kernel.rational_basis) {
        std::vector<std::string> row;
        for (const Rational& q : basis) row.push_back(format_rational(q));
        r.kernel_basis.push_back(std::move(row));
    }
    for (const auto& basis : analysis.kernel.sample_integer_vectors) {
        r.kernel_integer_basis.push_back(int_vector_strings(basis));
    }
    if (analysis.siegel) r.siegel_bound = analysis.siegel->get_str();
    if (analysis.min_k) {
        r.minimal_k = analysis.min_k->k.get_str();
        r.minimal_k_vector = int_vector_strings(analysis.min_k->vector.v);
    }

    const Verdict& v = analysis.verdict;
    r.irreducible = v.irreducible;
    r.proper_power = v.proper_power;
    r.fdk_trivial = v.fdk_trivial;
    r.kernel_criterion_applies = v.kernel_criterion_applies;
    switch (v.absolutely_irreducible) {
        case TriState::yes: r.absolutely_irreducible = "yes"; break;
        case TriState::no: r.absolutely_irreducible = "no"; break;
        case TriState::not_applicable: r.absolutely_irreducible = "not-applicable"; break;
    }
    if (v.min_nonunique_bound) r.min_nonunique_bound = v.min_nonunique_bound->get_str();
    if (analysis.min_bound_vector) {
        r.min_bound_vector = int_vector_strings(analysis.min_bound_vector->v);
    }
    if (v.uniqueness_bounds) {
        r.rank_uniqueness_bound = v.uniqueness_bounds->bound_rank.get_str();
        r.residue_field_uniqueness_bound = v.uniqueness_bounds->bound_q.get_str();
        r.sharper_bound_n1 = v.uniqueness_bounds->sharper_n1;
    }
    r.warnings = analysis.warnings;
    return r;
}

void AnalysisReport::attach_oracle(long j_max, OracleMode mode,
                                   const std::optional<OracleResult>& result) {
    Oracle o;
    o.j_max = j_max;
    o.mode = mode == OracleMode::full ? "full" : "kernel-pruned";
    if (result) {
        o.s = result->s;
        o.witness = Split{result->witness.j, element_from(result->witness.left),
                          element_from(result->witness.right)};
    }
    oracle = std::move(o);
}

Json AnalysisReport::to_json() const {
    Json j;
    j["input"] = input;
    j["p"] = prime;
    j["claimed_n"] = opt_json(claimed_n);
    j["n"] = n;
    j["witness_depth"] = witness_depth;
    Json rows = Json::array();
    for (const WitnessRow& w : witnesses) {
        rows.push_back(Json{{"class", w.class_representative},
                            {"witness", w.witness},
                            {"valuations", w.valuations}});
    }
    j["witness_classes"] = std::move(rows);
    j["fdp_matrix"] = matrix_json(matrix);
    j["reduced_fdp_matrix"] = matrix_json(reduced);
    j["rank"] = rank;
    j["single_entry_rows"] = single_entry_rows;
    j["kernel"] = Json{{"dimension", kernel_dimension},
                       {"rational_basis", kernel_basis},
                       {"integer_basis", kernel_integer_basis},
                       {"siegel_bound", opt_json(siegel_bound)},
                       {"minimal_k", opt_json(minimal_k)},
                       {"minimal_k_vector", opt_json(minimal_k_vector)}};
    j["verdict"] = Json{{"irreducible", irreducible},
                        {"proper_power", proper_power},
                        {"fdk_trivial", fdk_trivial},
                        {"kernel_criterion_applies", kernel_criterion_applies},
                        {"absolutely_irreducible", absolutely_irreducible},
                        {"min_nonunique_bound", opt_json(min_nonunique_bound)},
                        {"min_bound_vector", opt_json(min_bound_vector)},
                        {"rank_uniqueness_bound", opt_json(rank_uniqueness_bound)},
                        {"residue_field_uniqueness_bound", opt_json(residue_field_uniqueness_bound)},
                        {"sharper_bound_n1", opt_json(sharper_bound_n1)}};
    j["warnings"] = warnings;
    if (oracle) {
        Json o;
        o["j_max"] = oracle->j_max;
        o["mode"] = oracle->mode;
        o["s"] = opt_json(oracle->s);
        if (oracle->witness) {
            o["witness"] = Json{{"j", oracle->witness->j},
                                {"left", element_json(oracle->witness->left)},
                                {"right", element_json(oracle->witness->right)}};
        } else {
            o["witness"] = nullptr;
        }
        j["oracle"] = std::move(o);
    } else {
        j["oracle"] = nullptr;
    }
    return j;
}

AnalysisReport AnalysisReport::from_json(const Json& j) {
    AnalysisReport r;
    r.input = j.at("input").get<std::string>();
    r.prime = j.at("p").get<std::string>();
    r.claimed_n = opt_from_json<long>(j, "claimed_n");
    r.n = j.at("n").get<long>();
    r.witness_depth = j.at("witness_depth").get<int>();
    for (const Json& w : j.at("witness_classes")) {
        r.witnesses.push_back({w.at("class").get<std::string>(),
                               w.at("witness").get<std::string>(),
                               w.at("valuations").get<std::vector<long>>()});
    }
    r.matrix = matrix_from_json(j.at("fdp_matrix"));
    r.reduced = matrix_from_json(j.at("reduced_fdp_matrix"));
    r.rank = j.at("rank").get<long>();
    r.single_entry_rows = j.at("single_entry_rows").get<long>();
    const Json& k = j.at("kernel");
    r.kernel_dimension = k.at("dimension").get<long>();
    r.kernel_basis = k.at("rational_basis").get<std::vector<std::vector<std::string>>>();
    r.kernel_integer_basis = k.at("integer_basis").get<std::vector<std::vector<std::string>>>();
    r.siegel_bound = opt_from_json<std::string>(k, "siegel_bound");
    r.minimal_k = opt_from_json<std::string>(k, "minimal_k");
    r.minimal_k_vector = opt_from_json<std::vector<std::string>>(k, "minimal_k_vector");
    const Json& v = j.at("verdict");
    r.irreducible = v.at("irreducible").get<bool>();
    r.proper_power = v.at("proper_power").get<bool>();
    r.fdk_trivial = v.at("fdk_trivial").get<bool>();
    r.kernel_criterion_applies = v.at("kernel_criterion_applies").get<bool>();
    r.absolutely_irreducible = v.at("absolutely_irreducible").get<std::string>();
    r.min_nonunique_bound = opt_from_json<std::string>(v, "min_nonunique_bound");
    r.min_bound_vector = opt_from_json<std::vector<std::string>>(v, "min_bound_vector");
    r.rank_uniqueness_bound = opt_from_json<std::string>(v, "rank_uniqueness_bound");
    r.residue_field_uniqueness_bound = opt_from_json<std::string>(v, "residue_field_uniqueness_bound");
    r.sharper_bound_n1 = opt_from_json<long>(v, "sharper_bound_n1");
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (!j.at("oracle").is_null()) {
        const Json& o = j.at("oracle");
        Oracle oracle;
        oracle.j_max = o.at("j_max").get<long>();
        oracle.mode = o.at("mode").get<std::string>();
        oracle.s = opt_from_json<long>(o, "s");
        if (!o.at("witness").is_null()) {
            const Json& w = o.at("witness");
            oracle.witness = Split{w.at("j").get<long>(), element_from_json(w.at("left")),
                                   element_from_json(w.at("right"))};
        }
        r.oracle = std::move(oracle);
    }
    return r;
}

std::string AnalysisReport::to_text() const {
    std::ostringstream out;
    out << "input: " << input << "   [p = " << prime << "]\n";
    if (claimed_n) {
        out << "claimed denominator exponent: " << *claimed_n
            << (*claimed_n == n ? " (consistent)" : " (MISMATCH, computed value wins)") << "\n";
    }
    for (const std::string& w : warnings) out << "warning: " << w << "\n";
    out << "fixed divisor valuation: n = " << n << "\n";
    out << "witness classes mod " << prime << "^" << witness_depth << ":\n";
    for (const WitnessRow& w : witnesses) {
        out << "  class " << w.class_representative << "  witness " << w.witness << "  v_P = "
            << vector_text(w.valuations) << "\n";
    }
    out << "fdp matrix (" << matrix.rows.size() << " x "
        << (matrix.rows.empty() ? 0 : matrix.rows.front().size()) << "):\n";
    for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
        out << "  " << vector_text(matrix.rows[i]) << "  [class " << matrix.row_labels[i]
            << "]\n";
    }
    out << "reduced: rank r = " << rank << ", single-entry rows u = " << single_entry_rows
        << "\n";
    for (const auto& row : reduced.rows) out << "  " << vector_text(row) << "\n";
    out << "kernel: dimension " << kernel_dimension << "\n";
    for (const auto& b : kernel_integer_basis) out << "  basis " << vector_text(b) << "\n";
    if (siegel_bound) out << "siegel bound: " << *siegel_bound << "\n";
    if (minimal_k) {
        out << "minimal K = " << *minimal_k << " at v = " << vector_text(*minimal_k_vector)
            << "\n";
    }
    out << "verdict:\n";
    out << "  irreducible: " << (irreducible ? "yes" : "no") << "\n";
    out << "  proper power: " << (proper_power ? "yes" : "no") << "\n";
    out << "  fixed divisor kernel trivial: " << (fdk_trivial ? "yes" : "no") << "\n";
    out << "  absolutely irreducible: " << absolutely_irreducible
        << (kernel_criterion_applies ? "" : "  (kernel characterization not applicable)") << "\n";
    if (min_nonunique_bound) {
        out << "  non-unique factorization from exponent " << *min_nonunique_bound << " on (v = "
            << vector_text(*min_bound_vector) << ")\n";
    }
    if (rank_uniqueness_bound) {
        out << "  uniqueness check exponent (rank bound): " << *rank_uniqueness_bound << "\n";
        out << "  uniqueness check exponent (residue field bound): " << *residue_field_uniqueness_bound << "\n";
    }
    if (sharper_bound_n1) {
        out << "  sharper known bound for n = 1: " << *sharper_bound_n1 << "\n";
    }
    if (oracle) {
        out << "oracle (mode " << oracle->mode << ", j_max " << oracle->j_max << "): ";
        if (oracle->s) {
            out << "minimal non-uniquely factoring power S = " << *oracle->s << "\n";
            out << "  F^" << oracle->witness->j << " = [exponents "
                << vector_text(oracle->witness->left.exponents) << " / p^"
                << oracle->witness->left.denominator_exponent << "] * [exponents "
                << vector_text(oracle->witness->right.exponents) << " / p^"
                << oracle->witness->right.denominator_exponent << "]\n";
        } else {
            out << "no non-unique factorization up to j_max\n";
        }
    }
    return out.str();
}

RealizationReport RealizationReport::from(const RealizationSpec& spec) {
    RealizationReport r;
    r.r = spec.r;
    r.n = spec.n;
    r.prime = spec.p.get_str();
    r.primorial = spec.primorial.get_str();
    r.w = int_vector_strings(spec.w);
    r.a = int_vector_strings(spec.a);
    r.z = int_vector_strings(spec.z);
    r.b = int_vector_strings(spec.b);
    r.c = int_vector_strings(spec.c);
    for (const Polynomial& h : spec.h_family) r.h_family.push_back(format_polynomial(h));
    r.aux_prime = spec.aux_prime.get_str();
    r.congruence_modulus = spec.small_prime_modulus.get_str();
    for (const auto& [l, e] : spec.small_prime_exponents) {
        r.small_prime_exponents.emplace_back(l.get_str(), e);
    }
    std::string family;
    for (const Polynomial& g : spec.g_family) {
        if (!family.empty()) family += "*";
        family += "(" + format_polynomial(g) + ")";
    }
    r.family = family;
    r.expected_s = spec.expected_s.get_str();
    return r;
}

Json RealizationReport::to_json() const {
    Json j;
    j["r"] = r;
    j["n"] = n;
    j["p"] = prime;
    j["primorial"] = primorial;
    j["residues"] = Json{{"w", w}, {"a", a}, {"z", z}};
    j["shifted_roots"] = Json{{"b", b}, {"c", c}};
    j["h_family"] = h_family;
    j["eisenstein_prime"] = aux_prime;
    j["congruence_modulus"] = congruence_modulus;
    Json exps = Json::array();
    for (const auto& [l, e] : small_prime_exponents) {
        exps.push_back(Json{{"prime", l}, {"fixdiv_valuation", e}});
    }
    j["small_prime_exponents"] = std::move(exps);
    j["family"] = family;
    j["expected_s"] = expected_s;
    return j;
}

std::string RealizationReport::to_text() const {
    std::ostringstream out;
    out << "tightness family for r = " << r << ", n = " << n << " over Z_(" << prime << ")\n";
    out << "residues: w = " << vector_text(w) << ", a = " << vector_text(a) << ", z = "
        << vector_text(z) << "\n";
    out << "shifted roots: b = " << vector_text(b) << ", c = " << vector_text(c) << "\n";
    out << "h family:\n";
    for (const std::string& h : h_family) out << "  " << h << "\n";
    out << "eisenstein prime Q = " << aux_prime << ", congruence modulus = "
        << congruence_modulus << "\n";
    out << "family: " << family << "\n";
    out << "expected minimal non-unique power S = " << expected_s << "\n";
    return out.str();
}

}  // namespace ivp
