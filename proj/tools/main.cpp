#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ivpfactor/report.hpp"

namespace {

using namespace ivp;

// exit codes: 0 ok, 1 usage, 2 computation error, 3 verification failure
constexpr int exit_usage = 1;
constexpr int exit_compute = 2;
constexpr int exit_verify = 3;

void emit(const Json& j, const std::string& text, const std::string& json_path) {
    std::cout << text;
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw ComputeError("cannot open " + json_path + " for writing");
        out << j.dump(2) << "\n";
    }
}

Json subset(const Json& full, const std::vector<std::string>& keys) {
    Json out;
    for (const std::string& k : keys) out[k] = full.at(k);
    return out;
}

KernelVector parse_vector(const std::string& text, std::size_t expected_size) {
    KernelVector v;
    std::string current;
    auto flush = [&] {
        if (current.empty()) throw ComputeError("empty component in --vector");
        v.v.emplace_back(current, 10);
        current.clear();
    };
    for (char c : text) {
        if (c == ',') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            current += c;
        }
    }
    flush();
    if (v.v.size() != expected_size) {
        throw ComputeError("--vector has " + std::to_string(v.v.size()) + " components, expected " +
                           std::to_string(expected_size));
    }
    return v;
}

struct InputArgs {
    std::string expression;
    long p = 0;
};

ParseResult parse_input(const InputArgs& in) {
    PadicContext ctx((Int(in.p)));
    return parse_factored_poly(in.expression, ctx);
}

void add_input_options(CLI::App* cmd, InputArgs& in) {
    cmd->add_option("expression", in.expression,
                    "factored polynomial, e.g. \"(x^2+9)*(x-5)^3*(x-1)*(x-7)\"")
        ->required();
    cmd->add_option("--p", in.p, "prime of the coefficient ring Z_(p)")->required();
}

long to_long_exponent(const Int& x) {
    if (!x.fits_slong_p()) throw ComputeError("exponent too large for the oracle");
    return x.get_si();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"absolute irreducibility of integer-valued polynomials over Z_(p)"};
    app.require_subcommand(1);
    std::string json_path;
    app.add_option("--json", json_path, "also write the report as JSON to this file");

    InputArgs in;
    std::string vector_text;
    long opt_k = 0;
    long opt_l = 0;
    long j_max = 0;
    long gen_r = 0;
    long gen_n = 0;
    std::string mode_name = "kernel-pruned";
    bool allow_huge = false;
    bool with_oracle = false;

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "full report: witnesses, matrix, kernel, verdict");
    add_input_options(analyze_cmd, in);
    analyze_cmd->add_option("--oracle-jmax", j_max, "also run the factorization oracle up to this power");

    CLI::App* kernel_cmd = app.add_subcommand("kernel", "fdp matrix and fixed divisor kernel only");
    add_input_options(kernel_cmd, in);

    CLI::App* bounds_cmd = app.add_subcommand("bounds", "exponent bounds only");
    add_input_options(bounds_cmd, in);

    CLI::App* facpow_cmd = app.add_subcommand(
        "factorize-power", "construct an explicit non-trivial factorization of a power of F");
    add_input_options(facpow_cmd, in);
    facpow_cmd->add_option("--vector", vector_text,
                           "integer kernel vector, comma separated (default: the bound-minimizing one)");
    facpow_cmd->add_option("--k", opt_k, "left exponent (default: minimal admissible)");
    facpow_cmd->add_option("--l", opt_l, "right exponent (default: minimal admissible)");

    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "search for the minimal power of F with a non-trivial factorization");
    add_input_options(oracle_cmd, in);
    oracle_cmd->add_option("--jmax", j_max, "largest power to test")->required();
    oracle_cmd->add_option("--mode", mode_name, "full or kernel-pruned")
        ->check(CLI::IsMember({"full", "kernel-pruned"}));
    oracle_cmd->add_flag("--allow-huge", allow_huge, "permit j_max beyond 1000");

    CLI::App* generate_cmd = app.add_subcommand(
        "generate", "generate the tightness family with fdp rank r and fixed divisor p^n");
    generate_cmd->add_option("--r", gen_r, "fdp matrix rank, >= 2")->required();
    generate_cmd->add_option("--n", gen_n, "fixed divisor valuation, >= 2")->required();

    CLI::App* verify_cmd = app.add_subcommand(
        "verify-generated", "generate the family and verify every hypothesis, oracle included");
    verify_cmd->add_option("--r", gen_r, "fdp matrix rank, >= 2")->required();
    verify_cmd->add_option("--n", gen_n, "fixed divisor valuation, >= 2")->required();
    verify_cmd->add_option("--jmax", j_max, "oracle power cap (default: min(expected S, 12))");
    verify_cmd->add_option("--mode", mode_name, "full or kernel-pruned")
        ->check(CLI::IsMember({"full", "kernel-pruned"}));
    bool skip_oracle = false;
    verify_cmd->add_flag("--no-oracle", skip_oracle, "skip the minimality oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : exit_usage;
    }

    try {
        OracleMode mode = mode_name == "full" ? OracleMode::full : OracleMode::kernel_pruned;

        if (analyze_cmd->parsed() || kernel_cmd->parsed() || bounds_cmd->parsed()) {
            ParseResult input = parse_input(in);
            Analysis analysis = analyze(input.fp);
            AnalysisReport report = AnalysisReport::from(input.fp, analysis, input.claimed_n);
            for (const std::string& w : input.warnings) {
                if (std::find(report.warnings.begin(), report.warnings.end(), w) ==
                    report.warnings.end()) {
                    report.warnings.push_back(w);
                }
            }
            if (analyze_cmd->parsed() && j_max > 0) {
                OracleOptions opts;
                opts.mode = mode;
                opts.j_max = j_max;
                report.attach_oracle(j_max, mode, min_nonunique_power(input.fp, opts));
            }
            Json full = report.to_json();
            if (kernel_cmd->parsed()) {
                Json j = subset(full, {"input", "p", "n", "fdp_matrix", "reduced_fdp_matrix",
                                       "rank", "single_entry_rows", "kernel"});
                std::ostringstream text;
                text << "input: " << report.input << "   [p = " << report.prime << "]\n"
                     << "n = " << report.n << ", rank r = " << report.rank
                     << ", single-entry rows u = " << report.single_entry_rows << "\n"
                     << "kernel dimension " << report.kernel_dimension << "\n";
                for (const auto& b : report.kernel_integer_basis) {
                    text << "  basis (";
                    for (std::size_t i = 0; i < b.size(); ++i) text << (i ? ", " : "") << b[i];
                    text << ")\n";
                }
                emit(j, text.str(), json_path);
            } else if (bounds_cmd->parsed()) {
                Json j = subset(full, {"input", "p", "n", "verdict"});
                std::ostringstream text;
                text << "input: " << report.input << "   [p = " << report.prime << "]\n"
                     << "n = " << report.n << "\n";
                if (report.min_nonunique_bound) {
                    text << "non-unique factorization from exponent " << *report.min_nonunique_bound
                         << " on\n";
                }
                if (report.rank_uniqueness_bound) {
                    text << "uniqueness check exponent (rank bound): " << *report.rank_uniqueness_bound
                         << "\n"
                         << "uniqueness check exponent (residue field bound): "
                         << *report.residue_field_uniqueness_bound << "\n";
                }
                if (report.sharper_bound_n1) {
                    text << "sharper known bound for n = 1: " << *report.sharper_bound_n1 << "\n";
                }
                emit(j, text.str(), json_path);
            } else {
                emit(full, report.to_text(), json_path);
            }
        } else if (facpow_cmd->parsed()) {
            ParseResult input = parse_input(in);
            Analysis analysis = analyze(input.fp);
            KernelVector v;
            if (!vector_text.empty()) {
                v = parse_vector(vector_text, input.fp.size());
            } else if (analysis.min_bound_vector) {
                v = *analysis.min_bound_vector;
            } else {
                throw ComputeError(
                    "the fixed divisor kernel is trivial; no non-trivial factorization exists");
            }
            std::vector<long> m = input.fp.multiplicities();
            Int s_plus(0), s_minus(0);
            {
                std::vector<Int> plus = v.positive_part();
                std::vector<Int> minus = v.negative_part();
                for (std::size_t i = 0; i < m.size(); ++i) {
                    Int q;
                    mpz_cdiv_q(q.get_mpz_t(), plus[i].get_mpz_t(), Int(m[i]).get_mpz_t());
                    if (q > s_plus) s_plus = q;
                    mpz_cdiv_q(q.get_mpz_t(), minus[i].get_mpz_t(), Int(m[i]).get_mpz_t());
                    if (q > s_minus) s_minus = q;
                }
            }
            long k = opt_k > 0 ? opt_k
                               : std::max(1L, to_long_exponent(Int(analysis.n + 1) * s_plus));
            long l = opt_l > 0 ? opt_l
                               : std::max(1L, to_long_exponent(Int(analysis.n + 1) * s_minus));
            FactorizationPair pair = construct_factorization_pair(input.fp, v, k, l);

            Json j;
            j["input"] = format_factored(input.fp);
            j["p"] = input.fp.ctx().prime().get_str();
            j["n"] = analysis.n;
            Json vec = Json::array();
            for (const Int& x : v.v) vec.push_back(x.get_str());
            j["vector"] = std::move(vec);
            j["k"] = k;
            j["l"] = l;
            j["j"] = pair.j;
            j["left"] = Json{{"exponents", pair.left.exponents},
                             {"denominator_exponent", pair.left.denominator_exponent},
                             {"element", format_element(input.fp, pair.left)}};
            j["right"] = Json{{"exponents", pair.right.exponents},
                              {"denominator_exponent", pair.right.denominator_exponent},
                              {"element", format_element(input.fp, pair.right)}};
            std::ostringstream text;
            text << "F^" << pair.j << " factors non-trivially as\n"
                 << "  " << format_element(input.fp, pair.left) << "\n"
                 << "  * " << format_element(input.fp, pair.right) << "\n"
                 << "both factors are integer-valued and neither is a power of F\n";
            emit(j, text.str(), json_path);
        } else if (oracle_cmd->parsed()) {
            if (j_max > 1000 && !allow_huge) {
                std::cerr << "error: --jmax " << j_max
                          << " looks like a residue-field style bound; doubly exponential searches "
                             "need --allow-huge\n";
                return exit_usage;
            }
            ParseResult input = parse_input(in);
            Analysis analysis = analyze(input.fp);
            OracleOptions opts;
            opts.mode = mode;
            opts.j_max = j_max;
            std::optional<OracleResult> result = min_nonunique_power(input.fp, opts);
            AnalysisReport report = AnalysisReport::from(input.fp, analysis, input.claimed_n);
            report.attach_oracle(j_max, mode, result);
            Json j = subset(report.to_json(), {"input", "p", "n", "oracle"});
            std::ostringstream text;
            if (result) {
                text << "minimal non-uniquely factoring power: S = " << result->s << "\n"
                     << "  " << format_element(input.fp, result->witness.left) << "\n"
                     << "  * " << format_element(input.fp, result->witness.right) << "\n";
            } else {
                text << "no non-trivial factorization of F^j for 2 <= j <= " << j_max << "\n";
            }
            emit(j, text.str(), json_path);
        } else if (generate_cmd->parsed()) {
            GeneratedFamily family = generate_and_verify(gen_r, gen_n, {});
            RealizationReport report = RealizationReport::from(family.spec);
            emit(report.to_json(), report.to_text(), json_path);
        } else if (verify_cmd->parsed()) {
            GenerateOptions opts;
            opts.oracle_mode = mode;
            with_oracle = !skip_oracle;
            if (with_oracle) {
                Int expected = expected_S(gen_r, gen_n);
                long cap = j_max > 0 ? j_max
                                     : std::min<long>(12, expected.fits_slong_p()
                                                              ? expected.get_si()
                                                              : 12);
                opts.oracle_j_max = cap;
            }
            GeneratedFamily family = generate_and_verify(gen_r, gen_n, opts);
            RealizationReport fam_report = RealizationReport::from(family.spec);
            AnalysisReport report = AnalysisReport::from(family.fp, family.analysis);
            if (opts.oracle_j_max) {
                report.attach_oracle(*opts.oracle_j_max, mode, family.oracle);
            }
            Json j;
            j["family"] = fam_report.to_json();
            j["analysis"] = report.to_json();
            std::ostringstream text;
            text << fam_report.to_text() << "\n" << report.to_text();
            if (opts.oracle_j_max && Int(*opts.oracle_j_max) < family.spec.expected_s) {
                text << "note: oracle cap " << *opts.oracle_j_max
                     << " is below the predicted S = " << family.spec.expected_s.get_str()
                     << "; verified unique factorization up to the cap only\n";
            }
            text << "all verifications passed\n";
            emit(j, text.str(), json_path);
        }
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return exit_usage;
    } catch (const VerifyError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return exit_verify;
    } catch (const ComputeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_compute;
    }
    return 0;
}
