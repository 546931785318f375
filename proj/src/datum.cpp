#include "mwbound/datum.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include "mwbound/errors.hpp"

namespace mwbound {

namespace {

// ---------------------------------------------------------------------------
// Document model: the file is a sequence of `key = value` statements where a
// value is a number (kept as its decimal spelling), a quoted string, an
// array [ ... ] or a table { key = value, ... }. '#' comments run to the end
// of the line. Newlines are just whitespace.
// ---------------------------------------------------------------------------

struct Value {
    enum class Kind { Number, String, Array, Table } kind = Kind::Number;
    std::string text; // Number: decimal spelling; String: contents
    std::vector<Value> items;
    std::vector<std::pair<std::string, Value>> fields;
    int line = 0, col = 0;
};

class Parser {
  public:
    Parser(const std::string& text, std::string source)
        : text_(text), source_(std::move(source)) {}

    std::vector<std::pair<std::string, Value>> parse_top() {
        std::vector<std::pair<std::string, Value>> out;
        skip_space();
        while (!at_end()) {
            out.push_back(parse_statement());
            skip_space();
        }
        if (out.empty()) parse_fail("empty input; expected `key = value` statements");
        return out;
    }

  private:
    const std::string& text_;
    std::string source_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;

    [[noreturn]] void parse_fail(const std::string& msg) const {
        fail(Errc::ParseError,
             source_ + ":" + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space() {
        while (!at_end()) {
            const char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        if (at_end() || peek() != c)
            parse_fail(std::string("expected '") + c + "'" +
                       (at_end() ? " but reached end of input" : ""));
        advance();
    }

    std::string parse_key() {
        if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            parse_fail("expected a key");
        std::string key;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            key += advance();
        return key;
    }

    std::pair<std::string, Value> parse_statement() {
        std::string key = parse_key();
        skip_space();
        expect('=');
        skip_space();
        return {std::move(key), parse_value()};
    }

    Value parse_value() {
        if (at_end()) parse_fail("expected a value");
        Value v;
        v.line = line_;
        v.col = col_;
        const char c = peek();
        if (c == '"') {
            v.kind = Value::Kind::String;
            advance();
            while (!at_end() && peek() != '"') {
                if (peek() == '\n') parse_fail("unterminated string");
                v.text += advance();
            }
            expect('"');
        } else if (c == '[') {
            v.kind = Value::Kind::Array;
            advance();
            skip_space();
            while (!at_end() && peek() != ']') {
                v.items.push_back(parse_value());
                skip_space();
                if (!at_end() && peek() == ',') {
                    advance();
                    skip_space();
                } else {
                    break;
                }
            }
            expect(']');
        } else if (c == '{') {
            v.kind = Value::Kind::Table;
            advance();
            skip_space();
            while (!at_end() && peek() != '}') {
                auto field = parse_statement();
                for (const auto& [key, ignored] : v.fields)
                    if (key == field.first) parse_fail("duplicate key \"" + key + "\"");
                v.fields.push_back(std::move(field));
                skip_space();
                if (!at_end() && peek() == ',') {
                    advance();
                    skip_space();
                } else {
                    break;
                }
            }
            expect('}');
        } else if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
            v.kind = Value::Kind::Number;
            while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                                 std::string("+-.eE").find(peek()) != std::string::npos))
                v.text += advance();
        } else {
            parse_fail(std::string("unexpected character '") + c + "'");
        }
        return v;
    }
};

// ---------------------------------------------------------------------------
// Schema layer: walk the document, collecting every field-level problem with
// its path before failing.
// ---------------------------------------------------------------------------

class SchemaReader {
  public:
    CurveDatum read(const std::vector<std::pair<std::string, Value>>& top) {
        CurveDatum d;
        for (const auto& [key, value] : top) {
            if (seen_.count(key)) {
                error(key, "duplicate key");
                continue;
            }
            seen_.insert(key);
            if (key == "label") {
                d.label = expect_string(value, key);
            } else if (key == "genus") {
                d.genus = expect_int(value, key, 2);
            } else if (key == "field_degree") {
                d.field_degree = expect_int(value, key, 1);
            } else if (key == "rank") {
                d.rank = expect_int(value, key, 1);
            } else if (key == "torsion_order") {
                d.torsion_order = expect_int(value, key, 1);
            } else if (key == "group_order") {
                d.group_order = expect_int(value, key, 1);
            } else if (key == "gram") {
                gram_ = &value;
            } else if (key == "automorphisms") {
                auts_ = &value;
            } else if (key == "operators") {
                opers_ = &value;
            } else if (key == "mx") {
                read_mx(value, d);
            } else if (key == "notes") {
                for (size_t i = 0; i < expect_array(value, key).size(); ++i)
                    d.notes.push_back(
                        expect_string(value.items[i], key + "[" + std::to_string(i) + "]"));
            } else {
                error(key, "unknown key");
            }
        }

        if (!seen_.count("label")) error("label", "missing required field");
        if (!seen_.count("rank")) error("rank", "missing required field");
        if (!seen_.count("gram")) error("gram", "missing required field");

        if (d.rank >= 1 && gram_) d.gram = read_real_matrix(*gram_, "gram", d.rank);
        if (auts_ && opers_)
            error("operators", "a record carries either automorphisms or operators, not both");
        if (auts_) read_automorphisms(*auts_, d);
        if (opers_) read_operators(*opers_, d);

        if (!errors_.empty()) {
            std::string joined;
            for (const auto& e : errors_) joined += (joined.empty() ? "" : "; ") + e;
            fail(dimension_problem_ ? Errc::DimensionError : Errc::SchemaError, joined);
        }
        return d;
    }

  private:
    std::vector<std::string> errors_;
    std::set<std::string> seen_;
    bool dimension_problem_ = false;
    const Value* gram_ = nullptr;
    const Value* auts_ = nullptr;
    const Value* opers_ = nullptr;

    void error(const std::string& path, const std::string& msg) {
        errors_.push_back(path + ": " + msg);
    }

    void dimension_error(const std::string& path, const std::string& msg) {
        dimension_problem_ = true;
        error(path, msg);
    }

    std::string expect_string(const Value& v, const std::string& path) {
        if (v.kind != Value::Kind::String) {
            error(path, "expected a string");
            return {};
        }
        return v.text;
    }

    long long expect_int(const Value& v, const std::string& path, long long min_value) {
        if (v.kind != Value::Kind::Number) {
            error(path, "expected an integer");
            return min_value;
        }
        long long out = 0;
        const auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
        if (ec != std::errc() || ptr != v.text.data() + v.text.size()) {
            error(path, "not an integer: " + v.text);
            return min_value;
        }
        if (out < min_value)
            error(path, "must be >= " + std::to_string(min_value) + ", got " + v.text);
        return out;
    }

    double expect_number(const Value& v, const std::string& path) {
        if (v.kind != Value::Kind::Number) {
            error(path, "expected a number");
            return 0.0;
        }
        // The one string-to-double conversion for this field.
        char* end = nullptr;
        const double out = std::strtod(v.text.c_str(), &end);
        if (end != v.text.c_str() + v.text.size() || !std::isfinite(out)) {
            error(path, "not a finite number: " + v.text);
            return 0.0;
        }
        return out;
    }

    const std::vector<Value>& expect_array(const Value& v, const std::string& path) {
        static const std::vector<Value> empty;
        if (v.kind != Value::Kind::Array) {
            error(path, "expected an array");
            return empty;
        }
        return v.items;
    }

    Mat read_real_matrix(const Value& v, const std::string& path, long long dim) {
        Mat m(static_cast<int>(dim), static_cast<int>(dim));
        const auto& rows = expect_array(v, path);
        if (v.kind != Value::Kind::Array) return m;
        if (static_cast<long long>(rows.size()) != dim) {
            dimension_error(path, "expected " + std::to_string(dim) + " rows, got " +
                                      std::to_string(rows.size()));
            return m;
        }
        for (size_t i = 0; i < rows.size(); ++i) {
            const std::string row_path = path + "[" + std::to_string(i) + "]";
            const auto& cells = expect_array(rows[i], row_path);
            if (rows[i].kind != Value::Kind::Array) continue;
            if (static_cast<long long>(cells.size()) != dim) {
                dimension_error(row_path, "expected " + std::to_string(dim) + " entries, got " +
                                              std::to_string(cells.size()));
                continue;
            }
            for (size_t j = 0; j < cells.size(); ++j)
                m(static_cast<int>(i), static_cast<int>(j)) =
                    expect_number(cells[j], row_path + "[" + std::to_string(j) + "]");
        }
        return m;
    }

    IMat read_int_matrix(const Value& v, const std::string& path, long long dim) {
        IMat m(static_cast<int>(dim), static_cast<int>(dim));
        const auto& rows = expect_array(v, path);
        if (v.kind != Value::Kind::Array) return m;
        if (static_cast<long long>(rows.size()) != dim) {
            dimension_error(path, "expected " + std::to_string(dim) + " rows, got " +
                                      std::to_string(rows.size()));
            return m;
        }
        for (size_t i = 0; i < rows.size(); ++i) {
            const std::string row_path = path + "[" + std::to_string(i) + "]";
            const auto& cells = expect_array(rows[i], row_path);
            if (rows[i].kind != Value::Kind::Array) continue;
            if (static_cast<long long>(cells.size()) != dim) {
                dimension_error(row_path, "expected " + std::to_string(dim) + " entries, got " +
                                              std::to_string(cells.size()));
                continue;
            }
            for (size_t j = 0; j < cells.size(); ++j)
                m(static_cast<int>(i), static_cast<int>(j)) = expect_int(
                    cells[j], row_path + "[" + std::to_string(j) + "]",
                    std::numeric_limits<long long>::min());
        }
        return m;
    }

    void read_mx(const Value& v, CurveDatum& d) {
        if (v.kind != Value::Kind::Table) {
            error("mx", "expected a table");
            return;
        }
        for (const auto& [key, field] : v.fields) {
            if (key == "value") {
                d.mx.value = expect_number(field, "mx.value");
            } else if (key == "components") {
                if (field.kind != Value::Kind::Table) {
                    error("mx.components", "expected a table");
                    continue;
                }
                MxComponentsInput comp;
                bool saw_delta = false;
                for (const auto& [ckey, cfield] : field.fields) {
                    if (ckey == "delta_sum") {
                        comp.delta_sum = expect_number(cfield, "mx.components.delta_sum");
                        if (comp.delta_sum < 0.0)
                            error("mx.components.delta_sum", "must be >= 0");
                        saw_delta = true;
                    } else if (ckey == "bad_primes") {
                        const auto& primes = expect_array(cfield, "mx.components.bad_primes");
                        for (size_t i = 0; i < primes.size(); ++i) {
                            const std::string p =
                                "mx.components.bad_primes[" + std::to_string(i) + "]";
                            if (primes[i].kind != Value::Kind::Table) {
                                error(p, "expected a table");
                                continue;
                            }
                            BadPrime bp;
                            for (const auto& [pkey, pfield] : primes[i].fields) {
                                if (pkey == "phi") {
                                    bp.phi = expect_number(pfield, p + ".phi");
                                    if (bp.phi < 0.0) error(p + ".phi", "must be >= 0");
                                } else if (pkey == "log_norm") {
                                    bp.log_norm = expect_number(pfield, p + ".log_norm");
                                    if (!(bp.log_norm > 0.0)) error(p + ".log_norm", "must be > 0");
                                } else {
                                    error(p + "." + pkey, "unknown key");
                                }
                            }
                            comp.bad_primes.push_back(bp);
                        }
                    } else {
                        error("mx.components." + ckey, "unknown key");
                    }
                }
                if (!saw_delta) error("mx.components.delta_sum", "missing required field");
                d.mx.components = std::move(comp);
            } else {
                error("mx." + key, "unknown key");
            }
        }
        if (!d.mx.value && !d.mx.components)
            error("mx", "needs `value`, `components`, or both");
    }

    void read_automorphisms(const Value& v, CurveDatum& d) {
        const auto& items = expect_array(v, "automorphisms");
        for (size_t i = 0; i < items.size(); ++i) {
            const std::string p = "automorphisms[" + std::to_string(i) + "]";
            if (items[i].kind != Value::Kind::Table) {
                error(p, "expected a table");
                continue;
            }
            AutomorphismSpec spec;
            bool saw_matrix = false;
            for (const auto& [key, field] : items[i].fields) {
                if (key == "name") {
                    spec.name = expect_string(field, p + ".name");
                } else if (key == "matrix") {
                    spec.matrix = read_int_matrix(field, p + ".matrix", d.rank);
                    saw_matrix = true;
                } else {
                    error(p + "." + key, "unknown key");
                }
            }
            if (spec.name.empty()) error(p + ".name", "missing or empty");
            if (!saw_matrix) error(p + ".matrix", "missing required field");
            for (const auto& other : d.automorphisms)
                if (other.name == spec.name) error(p + ".name", "duplicate name " + spec.name);
            if (spec.name == "id" && saw_matrix && !spec.matrix.is_identity())
                error(p + ".matrix", "the reserved name \"id\" requires the identity matrix");
            d.automorphisms.push_back(std::move(spec));
        }
    }

    void read_operators(const Value& v, CurveDatum& d) {
        const auto& items = expect_array(v, "operators");
        for (size_t i = 0; i < items.size(); ++i) {
            const std::string p = "operators[" + std::to_string(i) + "]";
            if (items[i].kind != Value::Kind::Table) {
                error(p, "expected a table");
                continue;
            }
            OperatorSpec spec;
            bool saw_matrix = false;
            for (const auto& [key, field] : items[i].fields) {
                if (key == "name") {
                    spec.name = expect_string(field, p + ".name");
                } else if (key == "matrix") {
                    spec.matrix = read_real_matrix(field, p + ".matrix", d.rank);
                    saw_matrix = true;
                } else {
                    error(p + "." + key, "unknown key");
                }
            }
            if (spec.name.empty()) error(p + ".name", "missing or empty");
            if (!saw_matrix) error(p + ".matrix", "missing required field");
            for (const auto& other : d.operators)
                if (other.name == spec.name) error(p + ".name", "duplicate name " + spec.name);
            d.operators.push_back(std::move(spec));
        }
    }
};

std::string fmt_double(double v) {
    if (v == std::floor(v) && std::fabs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Trim to the shortest spelling that still round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

void write_real_matrix(std::ostringstream& out, const Mat& m, const std::string& indent) {
    out << "[\n";
    for (int i = 0; i < m.rows; ++i) {
        out << indent << "  [ ";
        for (int j = 0; j < m.cols; ++j)
            out << fmt_double(m(i, j)) << (j + 1 < m.cols ? ", " : " ");
        out << "],\n";
    }
    out << indent << "]";
}

void write_int_matrix(std::ostringstream& out, const IMat& m) {
    out << "[ ";
    for (int i = 0; i < m.rows; ++i) {
        out << "[ ";
        for (int j = 0; j < m.cols; ++j) out << m(i, j) << (j + 1 < m.cols ? ", " : " ");
        out << "]" << (i + 1 < m.rows ? ", " : " ");
    }
    out << "]";
}

} // namespace

void CurveDatum::require_curve_profile() const {
    // An empty automorphism list is allowed: the order-counting route only
    // needs the group order and the lattice.
    std::vector<std::string> missing;
    if (!genus) missing.push_back("genus");
    if (!field_degree) missing.push_back("field_degree");
    if (!group_order) missing.push_back("group_order");
    if (is_operator_record()) missing.push_back("automorphisms (not operators)");
    if (!mx.value && !mx.components) missing.push_back("mx");
    if (!missing.empty()) {
        std::string joined;
        for (const auto& m : missing) joined += (joined.empty() ? "" : ", ") + m;
        fail(Errc::SchemaError, "record \"" + label +
                                    "\" lacks fields required for the bound pipeline: " + joined);
    }
}

CurveDatum parse_datum(const std::string& text, const std::string& source_name) {
    Parser parser(text, source_name);
    return SchemaReader().read(parser.parse_top());
}

CurveDatum parse_datum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_datum(buf.str(), path);
}

std::string serialize_datum(const CurveDatum& d) {
    std::ostringstream out;
    out << "label = \"" << d.label << "\"\n";
    if (d.genus) out << "genus = " << *d.genus << "\n";
    if (d.field_degree) out << "field_degree = " << *d.field_degree << "\n";
    out << "rank = " << d.rank << "\n";
    out << "torsion_order = " << d.torsion_order << "\n";
    if (d.group_order) out << "group_order = " << *d.group_order << "\n";
    out << "gram = ";
    write_real_matrix(out, d.gram, "");
    out << "\n";
    if (!d.automorphisms.empty()) {
        out << "automorphisms = [\n";
        for (const auto& a : d.automorphisms) {
            out << "  { name = \"" << a.name << "\", matrix = ";
            write_int_matrix(out, a.matrix);
            out << " },\n";
        }
        out << "]\n";
    }
    if (!d.operators.empty()) {
        out << "operators = [\n";
        for (const auto& o : d.operators) {
            out << "  { name = \"" << o.name << "\", matrix = [ ";
            for (int i = 0; i < o.matrix.rows; ++i) {
                out << "[ ";
                for (int j = 0; j < o.matrix.cols; ++j)
                    out << fmt_double(o.matrix(i, j)) << (j + 1 < o.matrix.cols ? ", " : " ");
                out << "]" << (i + 1 < o.matrix.rows ? ", " : " ");
            }
            out << "] },\n";
        }
        out << "]\n";
    }
    if (d.mx.value || d.mx.components) {
        out << "mx = { ";
        bool first = true;
        if (d.mx.value) {
            out << "value = " << fmt_double(*d.mx.value);
            first = false;
        }
        if (d.mx.components) {
            if (!first) out << ", ";
            out << "components = { delta_sum = " << fmt_double(d.mx.components->delta_sum);
            out << ", bad_primes = [ ";
            for (size_t i = 0; i < d.mx.components->bad_primes.size(); ++i) {
                const auto& bp = d.mx.components->bad_primes[i];
                out << "{ phi = " << fmt_double(bp.phi)
                    << ", log_norm = " << fmt_double(bp.log_norm) << " }";
                if (i + 1 < d.mx.components->bad_primes.size()) out << ", ";
                out << " ";
            }
            out << "] }";
        }
        out << " }\n";
    }
    if (!d.notes.empty()) {
        out << "notes = [\n";
        for (const auto& n : d.notes) out << "  \"" << n << "\",\n";
        out << "]\n";
    }
    return out.str();
}

} // namespace mwbound
