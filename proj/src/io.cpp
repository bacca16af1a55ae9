#include "forestsmith/io.hpp"

#include "forestsmith/errors.hpp"
#include "forestsmith/truth_table.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace forestsmith {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Writers

void write_tree(std::ostream& out, const Tree& tree) {
    if (tree.is_leaf()) {
        out << (tree.label() ? R"({"leaf":1})" : R"({"leaf":0})");
        return;
    }
    out << R"({"hi":)";
    write_tree(out, tree.hi());
    out << R"(,"lo":)";
    write_tree(out, tree.lo());
    out << R"(,"var":)" << tree.var().value << '}';
}

void write_bag(std::ostream& out, const Bag& bag) {
    const BigCount total = bag.total_size();
    if (total > kMaxSerializedNodes)
        throw CapacityError("bag has " + total.str() + " expanded tree nodes; the serialization cap is " +
                            std::to_string(kMaxSerializedNodes));
    out << R"({"n_vars":)" << bag.n_vars() << R"(,"trees":[)";
    bool first = true;
    for (const Tree& t : bag.trees()) {
        if (!first) out << ',';
        first = false;
        write_tree(out, t);
    }
    out << "]}";
}

std::string serialize_tree(const Tree& tree) {
    if (tree.size() > kMaxSerializedNodes)
        throw CapacityError("tree has " + tree.size().str() + " expanded nodes; the serialization cap is " +
                            std::to_string(kMaxSerializedNodes));
    std::ostringstream out;
    write_tree(out, tree);
    return out.str();
}

std::string serialize_bag(const Bag& bag) {
    std::ostringstream out;
    write_bag(out, bag);
    return out.str();
}

std::string serialize_distribution(const Distribution& dist) {
    json doc;
    doc["l"] = dist.num_vars();
    if (dist.is_uniform()) {
        doc["type"] = "uniform";
    } else {
        doc["type"] = "table";
        doc["weights"] = dist.weights();
    }
    return doc.dump();
}

// ---------------------------------------------------------------------------
// Readers

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& message) {
    throw SchemaError(path + ": " + message);
}

void require_keys(const json& doc, const std::string& path, std::initializer_list<const char*> keys) {
    if (!doc.is_object()) schema_fail(path, "expected an object");
    for (const char* k : keys)
        if (!doc.contains(k)) schema_fail(path, std::string("missing key \"") + k + "\"");
    for (const auto& item : doc.items()) {
        bool known = false;
        for (const char* k : keys) known = known || item.key() == k;
        if (!known) schema_fail(path, "unexpected key \"" + item.key() + "\"");
    }
}

std::int64_t require_integer(const json& value, const std::string& path, std::int64_t lo, std::int64_t hi) {
    if (!value.is_number_integer()) schema_fail(path, "expected an integer");
    if (value.is_number_unsigned() && value.get<std::uint64_t>() > static_cast<std::uint64_t>(hi))
        schema_fail(path, "value out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    const auto v = value.get<std::int64_t>();
    if (v < lo || v > hi)
        schema_fail(path, "value " + std::to_string(v) + " out of range [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    return v;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("$: malformed JSON: ") + e.what());
    }
}

}  // namespace

Tree tree_from_json(const json& doc, int n_vars, const std::string& path) {
    if (!doc.is_object()) schema_fail(path, "expected a tree object");
    if (doc.contains("leaf")) {
        require_keys(doc, path, {"leaf"});
        return Tree::leaf(require_integer(doc["leaf"], path + ".leaf", 0, 1) == 1);
    }
    require_keys(doc, path, {"hi", "lo", "var"});
    if (n_vars < 1) schema_fail(path + ".var", "no variables declared");
    const auto var = require_integer(doc["var"], path + ".var", 1, n_vars);
    Tree lo = tree_from_json(doc["lo"], n_vars, path + ".lo");
    Tree hi = tree_from_json(doc["hi"], n_vars, path + ".hi");
    return Tree::node(VarIndex{static_cast<int>(var)}, std::move(lo), std::move(hi));
}

Bag bag_from_json(const json& doc) {
    require_keys(doc, "$", {"n_vars", "trees"});
    const int n_vars = static_cast<int>(require_integer(doc["n_vars"], "$.n_vars", 0, kMaxInputBits));
    const json& trees = doc["trees"];
    if (!trees.is_array()) schema_fail("$.trees", "expected an array");
    if (trees.size() % 2 == 0)
        schema_fail("$.trees", "bag must have odd cardinality, got " + std::to_string(trees.size()) + " trees");
    std::vector<Tree> parsed;
    parsed.reserve(trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i)
        parsed.push_back(tree_from_json(trees[i], n_vars, "$.trees[" + std::to_string(i) + "]"));
    try {
        return Bag(std::move(parsed), n_vars);
    } catch (const StructuralError& e) {
        schema_fail("$", e.what());
    }
}

Distribution distribution_from_json(const json& doc) {
    if (!doc.is_object()) schema_fail("$", "expected an object");
    if (!doc.contains("type") || !doc["type"].is_string()) schema_fail("$.type", "expected \"uniform\" or \"table\"");
    const std::string type = doc["type"].get<std::string>();
    if (type == "uniform") {
        require_keys(doc, "$", {"l", "type"});
    } else if (type == "table") {
        require_keys(doc, "$", {"l", "type", "weights"});
    } else {
        schema_fail("$.type", "expected \"uniform\" or \"table\", got \"" + type + "\"");
    }
    const int l = static_cast<int>(require_integer(doc["l"], "$.l", 0, kTruthTableCap));
    try {
        if (type == "uniform") return Distribution::uniform(l);
        const json& weights = doc["weights"];
        if (!weights.is_array()) schema_fail("$.weights", "expected an array");
        const std::size_t expected = std::size_t{1} << l;
        if (weights.size() != expected)
            schema_fail("$.weights", "expected " + std::to_string(expected) + " weights, got " +
                                         std::to_string(weights.size()));
        std::vector<std::uint64_t> w(expected);
        for (std::size_t i = 0; i < expected; ++i) {
            const json& v = weights[i];
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
                schema_fail("$.weights[" + std::to_string(i) + "]", "expected a non-negative integer");
            w[i] = v.get<std::uint64_t>();
        }
        return Distribution::table(l, std::move(w));
    } catch (const PreconditionError& e) {
        schema_fail("$", e.what());
    } catch (const CapacityError& e) {
        schema_fail("$.l", e.what());
    }
}

Bag deserialize_bag(std::string_view text) { return bag_from_json(parse_json(text)); }

Distribution deserialize_distribution(std::string_view text) { return distribution_from_json(parse_json(text)); }

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string tree_name(int position) { return "t" + std::to_string(position); }

json constant_flag(const Tree& tree) {
    const TruthTable tt = truth_table(tree, tree.max_var());
    if (tt.is_constant(true)) return 1;
    if (tt.is_constant(false)) return 0;
    return nullptr;
}

json row_entry(std::string expr, const Tree& tree) {
    return json{{"expr", std::move(expr)}, {"constant", constant_flag(tree)}, {"size", tree.size().str()}};
}

}  // namespace

json report_to_json(const ReductionReport& step) {
    json doc;
    doc["trees_before"] = step.trees_before;
    doc["trees_after"] = step.trees_after;
    doc["K"] = step.K;
    doc["j0_minus"] = step.j0_minus;
    doc["j0_plus"] = step.j0_plus;
    doc["order_minus"] = step.order_minus;
    doc["order_plus"] = step.order_plus;
    doc["weights"] = {
        {"total", step.total},
        {"w11", step.w11},
        {"w10", step.w10},
        {"w01", step.w01},
        {"w00", step.w00},
        {"level_minus", step.level_weight_minus},
        {"subset_minus", step.subset_weight_minus},
        {"level_plus", step.level_weight_plus},
        {"subset_plus", step.subset_weight_plus},
    };
    doc["measured_error"] = fraction_string(step.measured_error);
    doc["measured_error_decimal"] = decimal_string(step.measured_error);
    doc["bound"] = fraction_string(step.bound);
    doc["stratum_bound"] = fraction_string(step.stratum_bound);
    doc["disagreement_count"] = step.disagreements.size();
    doc["sizes"] = {
        {"input_max", step.input_max_size.str()},
        {"input_total", step.input_total_size.str()},
        {"output_max", step.output_max_size.str()},
        {"output_total", step.output_total_size.str()},
        {"size_constant", step.size_constant.str()},
        {"size_ratio", fraction_string(step.size_ratio)},
    };

    // Construction table: one row per prefix stratum, one column per reduced tree.
    const int K = step.K;
    json minus_row = json::array();
    json mixed_row = json::array();
    json plus_row = json::array();
    for (std::size_t col = 0; col < step.columns.size(); ++col) {
        const int i = static_cast<int>(col) + 1;
        const auto& column = step.columns[col];
        const auto om = [&](int j) { return step.order_minus[j - 3]; };
        const auto op = [&](int j) { return step.order_plus[j - 3]; };

        std::string minus_expr = tree_name(om(2 + i));
        std::string plus_expr = tree_name(op(2 + i));
        if (i <= K) {
            std::string l1;
            for (int q = 3; q < 2 + i; ++q) l1 += tree_name(om(q)) + " & ";
            minus_expr += " | (" + l1 + "!" + tree_name(om(2 + i)) + ")";
            std::string tail;
            for (int q = 3 + i; q <= 2 + K; ++q) tail += (tail.empty() ? "" : " | ") + tree_name(op(q));
            plus_expr += " & (" + (tail.empty() ? std::string("0") : tail) + ")";
        }
        minus_row.push_back(row_entry(minus_expr, column.minus));
        mixed_row.push_back(row_entry(tree_name(2 + i), column.mixed));
        plus_row.push_back(row_entry(plus_expr, column.plus));
    }
    doc["rows"] = {{"t1t2", minus_row}, {"mixed", mixed_row}, {"not_t1_not_t2", plus_row}};
    return doc;
}

json report_to_json(const IteratedReport& report) {
    json doc;
    doc["c"] = report.c;
    doc["K"] = report.K;
    doc["original_total"] = report.original_total;
    doc["cumulative_error"] = fraction_string(report.cumulative_error);
    doc["cumulative_error_decimal"] = decimal_string(report.cumulative_error);
    doc["bound"] = fraction_string(report.bound);
    json steps = json::array();
    for (std::size_t j = 0; j < report.steps.size(); ++j) {
        json s = report_to_json(report.steps[j]);
        s["iteration"] = j + 1;
        steps.push_back(std::move(s));
    }
    doc["steps"] = std::move(steps);
    return doc;
}

// ---------------------------------------------------------------------------
// Files

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        try {
            writer(out);
        } catch (...) {
            out.close();
            std::filesystem::remove(tmp);
            throw;
        }
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    write_file_atomic(path, [&](std::ostream& out) { out << content; });
}

}  // namespace forestsmith
