#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mwbound/matrix.hpp"

namespace mwbound {

struct BadPrime {
    double phi = 0.0;      // local intersection contribution, >= 0
    double log_norm = 0.0; // log of the prime norm, > 0
};

/// Inputs to the bound constant that are external to this tool: the sum of
/// Faltings delta-invariants over complex embeddings and the bad-prime data.
struct MxComponentsInput {
    double delta_sum = 0.0;
    std::vector<BadPrime> bad_primes;
};

/// Either a precomputed constant, its components, or both (they must agree
/// to 1e-6 relative when both are present).
struct MxInput {
    std::optional<double> value;
    std::optional<MxComponentsInput> components;
};

struct AutomorphismSpec {
    std::string name;
    IMat matrix;
};

struct OperatorSpec {
    std::string name;
    Mat matrix;
};

/// One record of Mordell-Weil data for a curve, or a bare operator-level
/// record (gram plus self-adjoint operators) for spectral experiments.
/// A record carries either `automorphisms` or `operators`, never both.
struct CurveDatum {
    std::string label;
    std::optional<long long> genus;
    std::optional<long long> field_degree;
    long long rank = 0;
    long long torsion_order = 1;
    Mat gram;
    std::vector<AutomorphismSpec> automorphisms;
    std::vector<OperatorSpec> operators;
    std::optional<long long> group_order;
    MxInput mx;
    /// Free-text remarks from the input file, echoed into reports.
    std::vector<std::string> notes;

    bool is_operator_record() const { return !operators.empty(); }
    /// Validates the fields a full bound pipeline needs; throws SchemaError.
    void require_curve_profile() const;
};

/// Parses the documented key-value text format. Numbers are kept as decimal
/// strings during parsing and converted exactly once. Throws ParseError
/// (with line:column), SchemaError (with a field path) or DimensionError.
CurveDatum parse_datum(const std::string& text, const std::string& source_name = "<input>");

CurveDatum parse_datum_file(const std::string& path);

/// Canonical text form; parse(serialize(d)) reproduces d exactly.
std::string serialize_datum(const CurveDatum& datum);

} // namespace mwbound
