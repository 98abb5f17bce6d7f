#pragma once

#include <nlohmann/json.hpp>

#include "ivpfactor/parse.hpp"
#include "ivpfactor/realization.hpp"

namespace ivp {

// Insertion-ordered JSON keeps command output bit-identical across runs.
using Json = nlohmann::ordered_json;

// Serializable mirror of an Analysis.  Integers that may exceed 64 bits
// (bounds, kernel entries, class representatives) are decimal strings.
struct AnalysisReport {
    std::string input;
    std::string prime;
    std::optional<long> claimed_n;
    long n = 0;
    int witness_depth = 1;

    struct WitnessRow {
        std::string class_representative;
        std::string witness;
        std::vector<long> valuations;
    };
    std::vector<WitnessRow> witnesses;

    struct Matrix {
        std::vector<std::string> row_labels;
        std::vector<std::vector<long>> rows;
    };
    Matrix matrix;
    Matrix reduced;
    long rank = 0;
    long single_entry_rows = 0;

    long kernel_dimension = 0;
    std::vector<std::vector<std::string>> kernel_basis;          // rationals "a/b"
    std::vector<std::vector<std::string>> kernel_integer_basis;  // primitive integer vectors
    std::optional<std::string> siegel_bound;
    std::optional<std::string> minimal_k;
    std::optional<std::vector<std::string>> minimal_k_vector;

    bool irreducible = false;
    bool proper_power = false;
    bool fdk_trivial = false;
    bool kernel_criterion_applies = false;
    std::string absolutely_irreducible;  // "yes" | "no" | "not-applicable"
    std::optional<std::string> min_nonunique_bound;
    std::optional<std::vector<std::string>> min_bound_vector;
    std::optional<std::string> rank_uniqueness_bound;
    std::optional<std::string> residue_field_uniqueness_bound;
    std::optional<long> sharper_bound_n1;

    std::vector<std::string> warnings;

    struct Element {
        std::vector<long> exponents;
        long denominator_exponent = 0;
    };
    struct Split {
        long j = 0;
        Element left;
        Element right;
    };
    struct Oracle {
        long j_max = 0;
        std::string mode;
        std::optional<long> s;
        std::optional<Split> witness;
    };
    std::optional<Oracle> oracle;

    static AnalysisReport from(const FactoredPolynomial& fp, const Analysis& analysis,
                               std::optional<long> claimed_n = std::nullopt);
    void attach_oracle(long j_max, OracleMode mode, const std::optional<OracleResult>& result);

    Json to_json() const;
    static AnalysisReport from_json(const Json& j);
    std::string to_text() const;
};

// Provenance of a generated tightness family.
struct RealizationReport {
    long r = 0;
    long n = 0;
    std::string prime;
    std::string primorial;
    std::vector<std::string> w;
    std::vector<std::string> a;
    std::vector<std::string> z;
    std::vector<std::string> b;
    std::vector<std::string> c;
    std::vector<std::string> h_family;
    std::string aux_prime;
    std::string congruence_modulus;
    std::vector<std::pair<std::string, long>> small_prime_exponents;
    std::string family;  // the g family in expression syntax
    std::string expected_s;

    static RealizationReport from(const RealizationSpec& spec);
    Json to_json() const;
    std::string to_text() const;
};

std::string format_element(const FactoredPolynomial& fp, const IvpElement& e);

}  // namespace ivp
