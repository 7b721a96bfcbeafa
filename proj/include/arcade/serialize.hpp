#pragma once

#include "arcade/ca.hpp"
#include "arcade/error.hpp"
#include "arcade/graph.hpp"
#include "arcade/ra.hpp"

#include <json.hpp>

#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace arcade {

using json = nlohmann::ordered_json;

namespace detail {

inline void require_keys(const json& j, const char* what,
                         const std::vector<std::string>& required,
                         const std::vector<std::string>& optional = {}) {
    if (!j.is_object()) throw StructuralError(std::string(what) + ": expected a JSON object");
    for (const auto& k : required)
        if (!j.contains(k)) throw StructuralError(std::string(what) + ": missing key '" + k + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        bool known = false;
        for (const auto& r : required)
            if (k == r) known = true;
        for (const auto& o : optional)
            if (k == o) known = true;
        if (!known) throw StructuralError(std::string(what) + ": unknown key '" + k + "'");
    }
}

inline std::vector<std::string> name_list(const json& j, const char* what) {
    if (!j.is_array()) throw StructuralError(std::string(what) + ": expected an array of names");
    std::vector<std::string> out;
    for (const auto& v : j) {
        if (!v.is_string()) throw StructuralError(std::string(what) + ": expected a name string");
        out.push_back(v.get<std::string>());
    }
    return out;
}

inline int id_of(const std::vector<std::string>& atoms, const std::string& name, const char* what) {
    for (std::size_t k = 0; k < atoms.size(); ++k)
        if (atoms[k] == name) return static_cast<int>(k);
    throw StructuralError(std::string(what) + ": unknown atom '" + name + "'");
}

inline json bitset_names(const Bitset& s, const std::vector<std::string>& atoms) {
    json out = json::array();
    s.for_each([&](std::size_t a) { out.push_back(atoms[a]); });
    return out;
}

inline Bitset bitset_from_names(const json& j, const std::vector<std::string>& atoms,
                                const char* what) {
    Bitset s(atoms.size());
    for (const auto& n : name_list(j, what))
        s.set(static_cast<std::size_t>(id_of(atoms, n, what)));
    return s;
}

} // namespace detail

// ---- JSON parsing entry point ----

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const std::exception& e) {
        throw StructuralError(std::string("json: ") + e.what());
    }
}

inline std::string json_kind(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw StructuralError("json: missing 'kind' discriminator");
    return j["kind"].get<std::string>();
}

// ---- relation algebra atom structures ----

inline json ra_to_json(const RAAtomStructure& r) {
    json j;
    j["kind"] = "RA";
    j["atoms"] = r.atoms;
    j["identity"] = detail::bitset_names(r.identity, r.atoms);
    json conv = json::object();
    for (std::size_t a = 0; a < r.atoms.size(); ++a)
        conv[r.atoms[a]] = r.atoms[static_cast<std::size_t>(r.converse[a])];
    j["converse"] = std::move(conv);
    json cycles = json::array();
    int n = r.n();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            r.row(a, b).for_each([&](std::size_t c) {
                cycles.push_back(json::array({r.atoms[static_cast<std::size_t>(a)],
                                              r.atoms[static_cast<std::size_t>(b)],
                                              r.atoms[c]}));
            });
    j["cycles"] = std::move(cycles);
    return j;
}

inline RAAtomStructure ra_from_json(const json& j) {
    detail::require_keys(j, "ra json", {"kind", "atoms", "identity", "converse", "cycles"});
    if (json_kind(j) != "RA") throw StructuralError("ra json: kind is not 'RA'");
    auto atoms = detail::name_list(j["atoms"], "ra json atoms");
    std::vector<int> identity;
    for (const auto& n : detail::name_list(j["identity"], "ra json identity"))
        identity.push_back(detail::id_of(atoms, n, "ra json identity"));
    const json& cj = j["converse"];
    if (!cj.is_object()) throw StructuralError("ra json: converse must be an object");
    std::vector<int> conv(atoms.size(), -1);
    for (auto it = cj.begin(); it != cj.end(); ++it) {
        if (!it.value().is_string()) throw StructuralError("ra json: converse value must be a name");
        int a = detail::id_of(atoms, it.key(), "ra json converse");
        if (conv[static_cast<std::size_t>(a)] >= 0)
            throw StructuralError("ra json: converse lists '" + it.key() + "' twice");
        conv[static_cast<std::size_t>(a)] =
            detail::id_of(atoms, it.value().get<std::string>(), "ra json converse");
    }
    for (std::size_t a = 0; a < conv.size(); ++a)
        if (conv[a] < 0)
            throw StructuralError("ra json: converse misses atom '" + atoms[a] + "'");
    if (!j["cycles"].is_array()) throw StructuralError("ra json: cycles must be an array");
    std::vector<std::array<int, 3>> cycles;
    for (const auto& t : j["cycles"]) {
        if (!t.is_array() || t.size() != 3)
            throw StructuralError("ra json: cycle must be a triple");
        std::array<int, 3> c{};
        for (int k = 0; k < 3; ++k) {
            if (!t[static_cast<std::size_t>(k)].is_string())
                throw StructuralError("ra json: cycle entry must be a name");
            c[static_cast<std::size_t>(k)] = detail::id_of(
                atoms, t[static_cast<std::size_t>(k)].get<std::string>(), "ra json cycles");
        }
        cycles.push_back(c);
    }
    return RAAtomStructure::create(std::move(atoms), std::move(conv), identity, cycles);
}

// ---- cylindric atom structures ----
// Each ti keeps its stored form: {"classes": [[names]]} for partitions,
// {"pairs": [[name, name]]} for arbitrary relations.

inline json ca_to_json(const CAAtomStructure& c) {
    json j;
    j["kind"] = "CA";
    j["dim"] = c.dim;
    j["atoms"] = c.atoms;
    json tis = json::array();
    for (const auto& r : c.ti) {
        json rel;
        if (r.is_partition()) {
            json classes = json::array();
            for (const auto& cls : r.classes()) {
                json one = json::array();
                for (int a : cls) one.push_back(c.atoms[static_cast<std::size_t>(a)]);
                classes.push_back(std::move(one));
            }
            rel["classes"] = std::move(classes);
        } else {
            json pairs = json::array();
            for (auto [a, b] : r.pair_list())
                pairs.push_back(json::array({c.atoms[static_cast<std::size_t>(a)],
                                             c.atoms[static_cast<std::size_t>(b)]}));
            rel["pairs"] = std::move(pairs);
        }
        tis.push_back(std::move(rel));
    }
    j["ti"] = std::move(tis);
    json eij = json::array();
    for (const auto& s : c.eij) eij.push_back(detail::bitset_names(s, c.atoms));
    j["eij"] = std::move(eij);
    if (c.has_pij) {
        json pij = json::array();
        for (const auto& m : c.pij) {
            json one = json::array();
            for (int v : m) {
                if (v < 0) one.push_back(nullptr);
                else one.push_back(c.atoms[static_cast<std::size_t>(v)]);
            }
            pij.push_back(std::move(one));
        }
        j["pij"] = std::move(pij);
    }
    return j;
}

inline CAAtomStructure ca_from_json(const json& j) {
    detail::require_keys(j, "ca json", {"kind", "dim", "atoms", "ti", "eij"}, {"pij"});
    if (json_kind(j) != "CA") throw StructuralError("ca json: kind is not 'CA'");
    if (!j["dim"].is_number_integer()) throw StructuralError("ca json: dim must be an integer");
    int dim = j["dim"].get<int>();
    auto atoms = detail::name_list(j["atoms"], "ca json atoms");
    if (!j["ti"].is_array()) throw StructuralError("ca json: ti must be an array");
    std::vector<CARelation> ti;
    for (const auto& rel : j["ti"]) {
        if (!rel.is_object()) throw StructuralError("ca json: ti entry must be an object");
        if (rel.contains("classes")) {
            detail::require_keys(rel, "ca json ti", {"classes"});
            std::vector<int> class_of(atoms.size(), -1);
            int cls = 0;
            if (!rel["classes"].is_array())
                throw StructuralError("ca json: ti classes must be an array");
            for (const auto& one : rel["classes"]) {
                for (const auto& n : detail::name_list(one, "ca json ti classes")) {
                    int a = detail::id_of(atoms, n, "ca json ti classes");
                    if (class_of[static_cast<std::size_t>(a)] >= 0)
                        throw StructuralError("ca json: atom '" + n + "' in two ti classes");
                    class_of[static_cast<std::size_t>(a)] = cls;
                }
                ++cls;
            }
            for (std::size_t a = 0; a < class_of.size(); ++a)
                if (class_of[a] < 0)
                    throw StructuralError("ca json: ti classes miss atom '" + atoms[a] + "'");
            ti.push_back(CARelation::partition(std::move(class_of)));
        } else if (rel.contains("pairs")) {
            detail::require_keys(rel, "ca json ti", {"pairs"});
            if (!rel["pairs"].is_array())
                throw StructuralError("ca json: ti pairs must be an array");
            std::vector<std::pair<int, int>> ps;
            for (const auto& p : rel["pairs"]) {
                if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
                    throw StructuralError("ca json: ti pair must be a name pair");
                ps.emplace_back(detail::id_of(atoms, p[0].get<std::string>(), "ca json ti pairs"),
                                detail::id_of(atoms, p[1].get<std::string>(), "ca json ti pairs"));
            }
            ti.push_back(CARelation::pairs(atoms.size(), std::move(ps)));
        } else {
            throw StructuralError("ca json: ti entry needs 'classes' or 'pairs'");
        }
    }
    if (!j["eij"].is_array()) throw StructuralError("ca json: eij must be an array");
    std::vector<Bitset> eij;
    for (const auto& s : j["eij"])
        eij.push_back(detail::bitset_from_names(s, atoms, "ca json eij"));
    std::vector<std::vector<int>> pij;
    if (j.contains("pij")) {
        if (!j["pij"].is_array()) throw StructuralError("ca json: pij must be an array");
        for (const auto& m : j["pij"]) {
            if (!m.is_array()) throw StructuralError("ca json: pij entry must be an array");
            std::vector<int> one;
            for (const auto& v : m) {
                if (v.is_null()) one.push_back(-1);
                else if (v.is_string())
                    one.push_back(detail::id_of(atoms, v.get<std::string>(), "ca json pij"));
                else throw StructuralError("ca json: pij value must be a name or null");
            }
            pij.push_back(std::move(one));
        }
    }
    return CAAtomStructure::create(dim, std::move(atoms), std::move(ti), std::move(eij),
                                   std::move(pij));
}

// ---- graphs and ordered structures ----

inline json graph_to_json(const Graph& g) {
    json j;
    j["kind"] = "graph";
    j["vertices"] = g.size();
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back(json::array({u, v}));
    j["edges"] = std::move(edges);
    return j;
}

inline Graph graph_from_json(const json& j) {
    detail::require_keys(j, "graph json", {"kind", "vertices", "edges"});
    if (json_kind(j) != "graph") throw StructuralError("graph json: kind is not 'graph'");
    if (!j["vertices"].is_number_integer())
        throw StructuralError("graph json: vertices must be an integer");
    Graph g(j["vertices"].get<int>());
    if (!j["edges"].is_array()) throw StructuralError("graph json: edges must be an array");
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw StructuralError("graph json: edge must be an integer pair");
        g.add_edge(e[0].get<int>(), e[1].get<int>());
    }
    return g;
}

inline json ordered_to_json(const OrderedStructure& s) {
    json j;
    j["kind"] = "ordered";
    j["name"] = s.name;
    j["size"] = s.size;
    json less = json::array();
    for (auto [a, b] : s.less) less.push_back(json::array({a, b}));
    j["less"] = std::move(less);
    return j;
}

inline OrderedStructure ordered_from_json(const json& j) {
    detail::require_keys(j, "ordered json", {"kind", "size", "less"}, {"name"});
    if (json_kind(j) != "ordered") throw StructuralError("ordered json: kind is not 'ordered'");
    if (!j["size"].is_number_integer())
        throw StructuralError("ordered json: size must be an integer");
    OrderedStructure s;
    s.size = j["size"].get<int>();
    if (s.size < 0) throw StructuralError("ordered json: negative size");
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw StructuralError("ordered json: name must be a string");
        s.name = j["name"].get<std::string>();
    }
    if (!j["less"].is_array()) throw StructuralError("ordered json: less must be an array");
    for (const auto& p : j["less"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
            !p[1].is_number_integer())
            throw StructuralError("ordered json: less entry must be an integer pair");
        int a = p[0].get<int>();
        int b = p[1].get<int>();
        if (a < 0 || b < 0 || a >= s.size || b >= s.size)
            throw StructuralError("ordered json: less entry out of range");
        if (a == b) throw StructuralError("ordered json: reflexive pair");
        s.less.emplace_back(a, b);
    }
    return s;
}

// ---- file helpers ----

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StructuralError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StructuralError("cannot write file: " + path);
    out << content;
    if (!out) throw StructuralError("write failed: " + path);
}

} // namespace arcade
