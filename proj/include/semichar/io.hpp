// Group file formats (versioned JSON), report assembly and rendering.
//
// Two file kinds are accepted: a raw multiplication table, or a generator
// list (permutations in cycle notation, or matrices over a named finite
// field with coefficient vectors serialized low degree first). Exports are
// canonical: sorted keys, two-space indent, trailing newline, so a parse /
// export round trip is byte-identical on canonical files.
#pragma once

#include "semichar/constructions.hpp"
#include "semichar/corpus.hpp"
#include "semichar/engine.hpp"
#include "semichar/families.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace semichar {

using nlohmann::json;

struct GroupFileOptions {
    AssocCheck assoc = AssocCheck::automatic;
    int closure_cap = kDefaultOrderCap;
    int table_export_cap = kDefaultOrderCap;
};

constexpr const char* kGroupFileFormat = "semichar-group";
constexpr int kGroupFileVersion = 1;

// ---------------------------------------------------------------------------
// Parsing

inline RealizedGroup parse_group_json(const json& j, const GroupFileOptions& opts = {},
                                      std::string* warning = nullptr) {
    if (!j.is_object()) throw InputError("group file: top level must be an object");
    if (j.value("format", "") != kGroupFileFormat)
        throw InputError("group file: missing or unknown \"format\" (expected \"" +
                         std::string(kGroupFileFormat) + "\")");
    if (j.value("version", 0) != kGroupFileVersion)
        throw InputError("group file: unsupported version");
    const std::string kind = j.value("kind", "");

    if (kind == "table") {
        const std::int64_t n = j.value("order", std::int64_t(0));
        if (n <= 0) throw InputError("group file: \"order\" must be a positive integer");
        if (!j.contains("mul") || !j["mul"].is_array())
            throw InputError("group file: \"mul\" must be an array");
        std::vector<int> mul;
        mul.reserve(j["mul"].size());
        for (const auto& v : j["mul"]) {
            if (!v.is_number_integer()) throw InputError("group file: \"mul\" entries must be integers");
            mul.push_back(v.get<int>());
        }
        std::optional<std::vector<std::string>> labels;
        if (j.contains("labels")) {
            labels = std::vector<std::string>();
            for (const auto& v : j["labels"]) labels->push_back(v.get<std::string>());
        }
        RealizedGroup g{GroupTable::from_mul(static_cast<int>(n), std::move(mul),
                                             std::move(labels), opts.assoc, warning),
                        j.value("name", std::string("table"))};
        g.finalize_indexes();
        return g;
    }

    if (kind == "permutation-generators") {
        if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
            throw InputError("group file: \"generators\" must be a non-empty array");
        const int degree = j.value("degree", 0);
        std::vector<Permutation> gens;
        for (const auto& v : j["generators"]) gens.push_back(perm_parse(v.get<std::string>(), degree));
        return closure_from_generators(gens, opts.closure_cap, j.value("name", std::string("closure")));
    }

    if (kind == "matrix-generators") {
        if (!j.contains("field")) throw InputError("group file: matrix generators need a \"field\"");
        const std::int64_t p = j["field"].value("p", std::int64_t(0));
        const int e = j["field"].value("e", 0);
        auto F = std::make_shared<const FiniteField>(p, e);
        if (j["field"].contains("modulus")) {
            std::vector<int> mod;
            for (const auto& c : j["field"]["modulus"]) mod.push_back(c.get<int>());
            if (mod != F->modulus())
                throw InputError("group file: field modulus does not match the canonical one "
                                 "(lexicographically smallest irreducible, low coefficients first)");
        }
        const int dim = j.value("dim", 0);
        if (dim <= 0) throw InputError("group file: \"dim\" must be positive");
        std::vector<MatrixFq> gens;
        for (const auto& mj : j["generators"]) {
            if (!mj.is_array() || static_cast<int>(mj.size()) != dim)
                throw InputError("group file: matrix generator must have " + std::to_string(dim) + " rows");
            MatrixFq m(dim, dim);
            for (int r = 0; r < dim; ++r) {
                if (static_cast<int>(mj[r].size()) != dim)
                    throw InputError("group file: matrix row length mismatch");
                for (int c = 0; c < dim; ++c) {
                    std::vector<int> coeffs;
                    for (const auto& cc : mj[r][c]) coeffs.push_back(cc.get<int>());
                    m.at(r, c) = F->encode(coeffs);
                }
            }
            gens.push_back(std::move(m));
        }
        if (gens.empty()) throw InputError("group file: \"generators\" must be non-empty");
        return closure_from_generators(std::move(F), gens, opts.closure_cap,
                                       j.value("name", std::string("closure")));
    }

    throw InputError("group file: unknown kind '" + kind + "'");
}

inline RealizedGroup parse_group_file(const std::string& path, const GroupFileOptions& opts = {},
                                      std::string* warning = nullptr) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open group file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& err) {
        throw InputError("group file '" + path + "': " + err.what());
    }
    return parse_group_json(j, opts, warning);
}

// ---------------------------------------------------------------------------
// Export

enum class GroupFileKind { automatic, table, generators };

inline json export_group_json(const RealizedGroup& g, GroupFileKind kind = GroupFileKind::automatic,
                              const GroupFileOptions& opts = {}) {
    if (kind == GroupFileKind::automatic)
        kind = g.order() <= opts.table_export_cap ? GroupFileKind::table : GroupFileKind::generators;
    json j;
    j["format"] = kGroupFileFormat;
    j["version"] = kGroupFileVersion;
    j["name"] = g.family;
    if (kind == GroupFileKind::table) {
        if (g.order() > opts.table_export_cap)
            throw CapExceeded("export: table of order " + std::to_string(g.order()) +
                              " exceeds the table export cap " +
                              std::to_string(opts.table_export_cap) +
                              "; export the generator form instead");
        j["kind"] = "table";
        j["order"] = g.order();
        j["mul"] = g.table.mul_data();
        if (g.table.labels()) j["labels"] = *g.table.labels();
        return j;
    }
    std::vector<int> gens = g.generators;
    if (gens.empty()) gens = greedy_generators(g.table);
    if (g.kind == RealizationKind::permutation) {
        j["kind"] = "permutation-generators";
        j["degree"] = g.perms.empty() ? 0 : g.perms.front().degree();
        json arr = json::array();
        for (int idx : gens) arr.push_back(perm_print(g.perms[idx]));
        if (arr.empty()) arr.push_back("()");
        j["generators"] = arr;
        return j;
    }
    if (g.kind == RealizationKind::matrix) {
        j["kind"] = "matrix-generators";
        j["field"] = {{"p", g.field->p()}, {"e", g.field->e()}, {"modulus", g.field->modulus()}};
        const int dim = g.mats.front().rows;
        j["dim"] = dim;
        json arr = json::array();
        auto emit = [&](int idx) {
            json rows = json::array();
            for (int r = 0; r < dim; ++r) {
                json row = json::array();
                for (int c = 0; c < dim; ++c) row.push_back(g.field->coeffs(g.mats[idx].at(r, c)));
                rows.push_back(row);
            }
            arr.push_back(rows);
        };
        for (int idx : gens) emit(idx);
        if (arr.empty()) emit(g.table.identity());
        j["generators"] = arr;
        return j;
    }
    throw InputError("export: abstract groups have no generator form; export the table "
                     "(order " + std::to_string(g.order()) + ")");
}

inline std::string export_group_string(const RealizedGroup& g,
                                       GroupFileKind kind = GroupFileKind::automatic,
                                       const GroupFileOptions& opts = {}) {
    return export_group_json(g, kind, opts).dump(2) + "\n";
}

inline void export_group_file(const RealizedGroup& g, const std::string& path,
                              GroupFileKind kind = GroupFileKind::automatic,
                              const GroupFileOptions& opts = {}) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    out << export_group_string(g, kind, opts);
    if (!out) throw InputError("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Run reports

struct ConstructionSummary {
    std::int64_t prime = 0;
    std::string mechanism;
    std::int64_t claimed = 0;
    std::int64_t target = 0;
    std::int64_t rank = 0;
    bool verified = false;
    std::optional<std::int64_t> exact_val;
    std::vector<std::string> notes;
};

struct RunReport {
    std::string descriptor;
    std::int64_t group_order = 1;
    SemicharGroupDesc dual;
    bool holds = false;
    std::vector<ValuationRow> valuations;
    std::vector<ConstructionSummary> constructions;
    double elapsed_ms = 0.0;
};

inline std::string render_factored_order(const SemicharGroupDesc& desc) {
    std::ostringstream os;
    os << desc.order.str();
    const cpp_int value = desc.order.value();
    if (value < cpp_int("1000000000000000000000000000000")) os << " = " << value;
    return os.str();
}

inline std::string render_text(const RunReport& r) {
    std::ostringstream os;
    os << "group " << r.descriptor << ": |G| = " << r.group_order << "\n";
    os << "|Ghat| = " << render_factored_order(r.dual) << "\n";
    os << "invariant factors: [";
    for (std::size_t i = 0; i < r.dual.invariant_factors.size(); ++i)
        os << (i ? ", " : "") << r.dual.invariant_factors[i];
    os << "]\n";
    os << "prime  val|G|  val|Ghat|  margin\n";
    for (const auto& row : r.valuations)
        os << "  " << row.prime << "      " << row.val_group << "       " << row.val_dual
           << "       " << (row.val_dual - row.val_group) << "\n";
    for (const auto& c : r.constructions) {
        os << "construction l=" << c.prime << " (" << c.mechanism << "): certified " << c.claimed
           << " >= " << c.target << " needed, rank " << c.rank
           << (c.verified ? ", all functions verified" : ", VERIFICATION FAILED");
        if (c.exact_val) os << ", exact val " << *c.exact_val;
        os << "\n";
        for (const auto& n : c.notes) os << "    note: " << n << "\n";
    }
    os << "conjecture: " << (r.holds ? "HOLDS" : "FAILS") << " (|G| "
       << (r.holds ? "divides" : "does not divide") << " |Ghat|)\n";
    os << "time: " << r.elapsed_ms << " ms\n";
    return os.str();
}

inline json render_json(const RunReport& r) {
    json j;
    j["group"] = r.descriptor;
    j["order"] = r.group_order;
    j["dual_order_factored"] = r.dual.order.str();
    {
        std::ostringstream os;
        os << r.dual.order.value();
        j["dual_order"] = os.str();
    }
    j["invariant_factors"] = r.dual.invariant_factors;
    json vals = json::array();
    for (const auto& row : r.valuations)
        vals.push_back({{"prime", row.prime},
                        {"val_group", row.val_group},
                        {"val_dual", row.val_dual}});
    j["valuations"] = vals;
    if (!r.constructions.empty()) {
        json cons = json::array();
        for (const auto& c : r.constructions) {
            json cj = {{"prime", c.prime},     {"mechanism", c.mechanism},
                       {"claimed", c.claimed}, {"target", c.target},
                       {"rank", c.rank},       {"verified", c.verified}};
            if (c.exact_val) cj["exact_val"] = *c.exact_val;
            if (!c.notes.empty()) cj["notes"] = c.notes;
            cons.push_back(cj);
        }
        j["constructions"] = cons;
    }
    j["holds"] = r.holds;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

} // namespace semichar
