// Copyright 2026 The qgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgraph/classical.hpp"
#include "qgraph/connect.hpp"
#include "qgraph/cpmaps.hpp"
#include "qgraph/opspace.hpp"

namespace qgraph {

// Insertion-ordered JSON keeps report bytes deterministic.
using Json = nlohmann::ordered_json;

/// Validation failure that names the offending JSON path.
struct SchemaError : ValidationError {
    SchemaError(const std::string& path, const std::string& what)
        : ValidationError("schema error at " + path + ": " + what) {}
};

// ---------------------------------------------------------------------------
// Scalar / matrix encoding: complex entries are [re, im] pairs, matrices are
// row-major nested arrays.
// ---------------------------------------------------------------------------

inline double schema_number(const Json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
}

inline int schema_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<int>();
}

inline Cplx schema_complex(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected an [re, im] pair");
    return Cplx(schema_number(j[0], path + "[0]"), schema_number(j[1], path + "[1]"));
}

inline CVec schema_vector(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a nonempty array of [re, im] pairs");
    CVec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = schema_complex(j[i], path + "[" + std::to_string(i) + "]");
    }
    return v;
}

inline CMat schema_matrix(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a nonempty array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    CMat m;
    for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = j[r];
        const std::string row_path = path + "[" + std::to_string(r) + "]";
        if (!row.is_array() || row.empty()) throw SchemaError(row_path, "expected a nonempty row");
        if (r == 0) {
            cols = row.size();
            m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        } else if (row.size() != cols) {
            throw SchemaError(row_path, "ragged row: expected " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                schema_complex(row[c], row_path + "[" + std::to_string(c) + "]");
        }
    }
    if (!all_finite(m)) throw SchemaError(path, "entries must be finite");
    return m;
}

inline Json to_json(const Cplx& z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(const CMat& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const CVec& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

// ---------------------------------------------------------------------------
// Instance files: {"kind": ..., "payload": ..., "meta": {...}}
// ---------------------------------------------------------------------------

struct InstanceMeta {
    std::optional<std::string> name;
    std::optional<std::uint64_t> seed;
    std::optional<Tolerance> tolerance;
};

struct Instance {
    std::string kind;
    Json payload;
    InstanceMeta meta;
};

inline const std::vector<std::string>& instance_kinds() {
    static const std::vector<std::string> kinds = {"quantum_graph", "classical_graph", "kraus_map",
                                                   "basis", "partition"};
    return kinds;
}

inline Instance parse_instance(const Json& j) {
    if (!j.is_object()) throw SchemaError("$", "expected an object");
    if (!j.contains("kind") || !j["kind"].is_string()) throw SchemaError("kind", "expected a string");
    Instance inst;
    inst.kind = j["kind"].get<std::string>();
    bool known = false;
    for (const std::string& k : instance_kinds()) known = known || k == inst.kind;
    if (!known) throw SchemaError("kind", "unknown kind '" + inst.kind + "'");
    if (!j.contains("payload") || !j["payload"].is_object()) {
        throw SchemaError("payload", "expected an object");
    }
    inst.payload = j["payload"];
    if (j.contains("meta")) {
        const Json& m = j["meta"];
        if (!m.is_object()) throw SchemaError("meta", "expected an object");
        if (m.contains("name")) {
            if (!m["name"].is_string()) throw SchemaError("meta.name", "expected a string");
            inst.meta.name = m["name"].get<std::string>();
        }
        if (m.contains("seed")) {
            if (!m["seed"].is_number_unsigned() && !m["seed"].is_number_integer()) {
                throw SchemaError("meta.seed", "expected an integer");
            }
            inst.meta.seed = m["seed"].get<std::uint64_t>();
        }
        if (m.contains("tolerance")) {
            const Json& t = m["tolerance"];
            if (!t.is_object() || !t.contains("rank_rel") || !t.contains("residual_abs")) {
                throw SchemaError("meta.tolerance", "expected {rank_rel, residual_abs}");
            }
            Tolerance tol{schema_number(t["rank_rel"], "meta.tolerance.rank_rel"),
                          schema_number(t["residual_abs"], "meta.tolerance.residual_abs")};
            tol.validate();
            inst.meta.tolerance = tol;
        }
    }
    return inst;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline Instance load_instance_file(const std::string& path) {
    return parse_instance(read_json_file(path));
}

/// Tolerance resolution: library default, overridden by the QGRAPH_TOL
/// environment variable ("residual_abs" or "rank_rel,residual_abs"), then by
/// the instance's meta.tolerance.
inline Tolerance resolve_tolerance(const InstanceMeta& meta) {
    Tolerance tol;
    if (const char* env = std::getenv("QGRAPH_TOL")) {
        std::string spec(env);
        const auto comma = spec.find(',');
        try {
            if (comma == std::string::npos) {
                tol.residual_abs = std::stod(spec);
            } else {
                tol.rank_rel = std::stod(spec.substr(0, comma));
                tol.residual_abs = std::stod(spec.substr(comma + 1));
            }
        } catch (const std::exception&) {
            throw ValidationError("QGRAPH_TOL: expected 'residual_abs' or 'rank_rel,residual_abs', got '" +
                                  spec + "'");
        }
        tol.validate();
    }
    if (meta.tolerance) tol = *meta.tolerance;
    return tol;
}

// ---------------------------------------------------------------------------
// Builders: payload -> domain values.
// ---------------------------------------------------------------------------

inline int payload_n(const Json& payload, const char* key = "n") {
    if (!payload.contains(key)) throw SchemaError(std::string("payload.") + key, "missing");
    const int n = schema_int(payload[key], std::string("payload.") + key);
    if (n <= 0) throw SchemaError(std::string("payload.") + key, "must be positive");
    return n;
}

inline QuantumGraph build_quantum_graph(const Instance& inst, const Tolerance& tol) {
    if (inst.kind != "quantum_graph") throw SchemaError("kind", "expected quantum_graph");
    const int n = payload_n(inst.payload);
    if (!inst.payload.contains("generators") || !inst.payload["generators"].is_array()) {
        throw SchemaError("payload.generators", "expected an array of matrices");
    }
    std::vector<CMat> gens;
    const Json& arr = inst.payload["generators"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "payload.generators[" + std::to_string(i) + "]";
        CMat g = schema_matrix(arr[i], path);
        if (g.rows() != n || g.cols() != n) throw SchemaError(path, "expected an n x n matrix");
        gens.push_back(std::move(g));
    }
    return make_quantum_graph(n, gens, tol);
}

inline ClassicalGraph build_classical_graph(const Instance& inst) {
    if (inst.kind != "classical_graph") throw SchemaError("kind", "expected classical_graph");
    const int n = payload_n(inst.payload);
    ClassicalGraph g(n);
    if (!inst.payload.contains("edges") || !inst.payload["edges"].is_array()) {
        throw SchemaError("payload.edges", "expected an array of [i, j] pairs");
    }
    const Json& arr = inst.payload["edges"];
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string path = "payload.edges[" + std::to_string(k) + "]";
        const Json& e = arr[k];
        if (!e.is_array() || e.size() != 2) throw SchemaError(path, "expected a pair of vertices");
        const int i = schema_int(e[0], path + "[0]");
        const int j = schema_int(e[1], path + "[1]");
        if (i < 1 || i > n || j < 1 || j > n) throw SchemaError(path, "vertex out of range (1-indexed)");
        if (i == j) throw SchemaError(path, "self-loops are implicit and may not be listed");
        g.add_edge(i - 1, j - 1);
    }
    return g;
}

inline KrausMap build_kraus_map(const Instance& inst, const Tolerance& tol) {
    if (inst.kind != "kraus_map") throw SchemaError("kind", "expected kraus_map");
    const int n = payload_n(inst.payload, "in_dim");
    const int d = payload_n(inst.payload, "out_dim");
    if (!inst.payload.contains("kraus") || !inst.payload["kraus"].is_array() ||
        inst.payload["kraus"].empty()) {
        throw SchemaError("payload.kraus", "expected a nonempty array of matrices");
    }
    std::vector<CMat> ops;
    const Json& arr = inst.payload["kraus"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "payload.kraus[" + std::to_string(i) + "]";
        CMat k = schema_matrix(arr[i], path);
        if (k.rows() != d || k.cols() != n) throw SchemaError(path, "expected a d x n matrix");
        ops.push_back(std::move(k));
    }
    return KrausMap::make(std::move(ops), tol);
}

inline OrthonormalBasisCn build_basis(const Instance& inst, const Tolerance& tol) {
    if (inst.kind != "basis") throw SchemaError("kind", "expected basis");
    const int n = payload_n(inst.payload);
    if (!inst.payload.contains("vectors") || !inst.payload["vectors"].is_array() ||
        inst.payload["vectors"].size() != static_cast<std::size_t>(n)) {
        throw SchemaError("payload.vectors", "expected exactly n vectors");
    }
    CMat cols(n, n);
    const Json& arr = inst.payload["vectors"];
    for (int i = 0; i < n; ++i) {
        const std::string path = "payload.vectors[" + std::to_string(i) + "]";
        CVec v = schema_vector(arr[static_cast<std::size_t>(i)], path);
        if (v.size() != n) throw SchemaError(path, "expected an n-vector");
        cols.col(i) = v;
    }
    return OrthonormalBasisCn::from_columns(cols, tol);
}

/// Partitions come either as 1-indexed coordinate parts or as explicit
/// projection matrices.
inline std::vector<Projection> build_partition(const Instance& inst, const Tolerance& tol) {
    if (inst.kind != "partition") throw SchemaError("kind", "expected partition");
    const int n = payload_n(inst.payload);
    std::vector<Projection> parts;
    if (inst.payload.contains("parts")) {
        const Json& arr = inst.payload["parts"];
        if (!arr.is_array() || arr.empty()) throw SchemaError("payload.parts", "expected an array of vertex sets");
        for (std::size_t p = 0; p < arr.size(); ++p) {
            const std::string path = "payload.parts[" + std::to_string(p) + "]";
            const Json& set = arr[p];
            if (!set.is_array() || set.empty()) throw SchemaError(path, "expected a nonempty vertex set");
            CMat frame = CMat::Zero(n, static_cast<Eigen::Index>(set.size()));
            for (std::size_t c = 0; c < set.size(); ++c) {
                const int v = schema_int(set[c], path + "[" + std::to_string(c) + "]");
                if (v < 1 || v > n) throw SchemaError(path, "vertex out of range (1-indexed)");
                frame(v - 1, static_cast<Eigen::Index>(c)) = 1.0;
            }
            parts.push_back(Projection::from_range(frame, tol));
        }
        return parts;
    }
    if (inst.payload.contains("projections")) {
        const Json& arr = inst.payload["projections"];
        if (!arr.is_array() || arr.empty()) {
            throw SchemaError("payload.projections", "expected an array of matrices");
        }
        for (std::size_t p = 0; p < arr.size(); ++p) {
            const std::string path = "payload.projections[" + std::to_string(p) + "]";
            CMat m = schema_matrix(arr[p], path);
            if (m.rows() != n || m.cols() != n) throw SchemaError(path, "expected an n x n matrix");
            try {
                parts.push_back(Projection::from_matrix(m, tol));
            } catch (const ValidationError& e) {
                throw SchemaError(path, e.what());
            }
        }
        return parts;
    }
    throw SchemaError("payload", "expected either 'parts' or 'projections'");
}

// ---------------------------------------------------------------------------
// Writers: domain values -> instance files and result blocks.
// ---------------------------------------------------------------------------

inline Json meta_json(const InstanceMeta& meta) {
    Json m = Json::object();
    if (meta.name) m["name"] = *meta.name;
    if (meta.seed) m["seed"] = *meta.seed;
    if (meta.tolerance) {
        m["tolerance"] = Json{{"rank_rel", meta.tolerance->rank_rel},
                              {"residual_abs", meta.tolerance->residual_abs}};
    }
    return m;
}

inline Json make_instance_json(const std::string& kind, Json payload, const InstanceMeta& meta = {}) {
    Json j;
    j["kind"] = kind;
    j["payload"] = std::move(payload);
    Json m = meta_json(meta);
    if (!m.empty()) j["meta"] = std::move(m);
    return j;
}

inline Json quantum_graph_instance(const QuantumGraph& s, const InstanceMeta& meta = {}) {
    Json payload;
    payload["n"] = s.ambient_dim();
    Json gens = Json::array();
    for (const CMat& b : s.basis()) gens.push_back(to_json(b));
    payload["generators"] = std::move(gens);
    return make_instance_json("quantum_graph", std::move(payload), meta);
}

inline Json classical_graph_instance(const ClassicalGraph& g, const InstanceMeta& meta = {}) {
    Json payload;
    payload["n"] = g.n();
    Json edges = Json::array();
    for (auto [i, j] : g.edges()) edges.push_back(Json::array({i + 1, j + 1}));
    payload["edges"] = std::move(edges);
    return make_instance_json("classical_graph", std::move(payload), meta);
}

inline Json kraus_instance(const KrausMap& phi, const InstanceMeta& meta = {}) {
    Json payload;
    payload["in_dim"] = phi.in_dim;
    payload["out_dim"] = phi.out_dim;
    Json ops = Json::array();
    for (const CMat& k : phi.kraus) ops.push_back(to_json(k));
    payload["kraus"] = std::move(ops);
    return make_instance_json("kraus_map", std::move(payload), meta);
}

inline Json basis_instance(const OrthonormalBasisCn& basis, const InstanceMeta& meta = {}) {
    Json payload;
    payload["n"] = basis.n();
    Json vectors = Json::array();
    for (int i = 0; i < basis.n(); ++i) vectors.push_back(to_json(CVec(basis.vectors.col(i))));
    payload["vectors"] = std::move(vectors);
    return make_instance_json("basis", std::move(payload), meta);
}

inline Json partition_instance(int n, const std::vector<std::vector<int>>& parts_zero_indexed,
                               const InstanceMeta& meta = {}) {
    Json payload;
    payload["n"] = n;
    Json parts = Json::array();
    for (const auto& part : parts_zero_indexed) {
        Json set = Json::array();
        for (int v : part) set.push_back(v + 1);
        parts.push_back(std::move(set));
    }
    payload["parts"] = std::move(parts);
    return make_instance_json("partition", std::move(payload), meta);
}

inline Json tolerance_json(const Tolerance& tol) {
    return Json{{"rank_rel", tol.rank_rel}, {"residual_abs", tol.residual_abs}};
}

inline const char* verdict_name(Verdict v) {
    return v == Verdict::Connected ? "connected" : "disconnected";
}

inline Json certificate_json(const ConnectivityCertificate& cert) {
    Json j;
    j["verdict"] = verdict_name(cert.verdict);
    j["stabilization_power"] = cert.stabilization_power;
    j["commutant_dim"] = cert.commutant_dim;
    if (cert.witness) {
        j["witness_rank"] = cert.witness->rank;
        j["witness"] = to_json(cert.witness->matrix);
    }
    return j;
}

inline Json separator_json(const SeparatorReport& rep) {
    Json j;
    j["rank"] = rep.separator.rank;
    j["mode"] = rep.mode == SeparatorMode::Disconnection ? "disconnection" : "one_dimensional";
    j["compressed_dim"] = rep.compressed_dim;
    j["projection"] = to_json(rep.separator.matrix);
    if (rep.sub_certificate) j["sub_certificate"] = certificate_json(*rep.sub_certificate);
    return j;
}

inline Json bounds_json(const ConnectivityBounds& bounds) {
    Json j;
    j["lower"] = bounds.lower;
    j["upper"] = bounds.upper;
    j["lower_conditional"] = bounds.lower_conditional;
    if (bounds.best_separator) j["best_separator"] = separator_json(*bounds.best_separator);
    j["method_log"] = bounds.method_log;
    return j;
}

inline Json tree_packing_json(const TreePackingResult& r, int parts) {
    return Json{{"parts", parts}, {"sum", r.sum}, {"bound", r.bound}, {"holds", r.holds}};
}

inline const char* sampled_verdict_name(SampledVerdict v) {
    return v == SampledVerdict::PassSampled ? "pass_sampled" : "violated";
}

inline Json orth_rep_json(const OrthRepReport& rep) {
    Json j;
    j["verdict"] = sampled_verdict_name(rep.verdict());
    j["pairs_tested"] = rep.pairs_tested;
    Json v = Json::array();
    for (const OrthRepViolation& viol : rep.violations) {
        v.push_back(Json{{"which", viol.which},
                         {"residual", viol.residual},
                         {"a", to_json(viol.a)},
                         {"b", to_json(viol.b)}});
    }
    j["violations"] = std::move(v);
    return j;
}

inline Json lgp_json(const LgpReport& rep) {
    Json j;
    j["verdict"] = sampled_verdict_name(rep.verdict());
    j["projections_tested"] = rep.projections_tested;
    if (rep.violation) {
        j["violation"] = Json{{"rank_before", rep.violation->rank_before},
                              {"rank_after", rep.violation->rank_after},
                              {"q", to_json(rep.violation->q.matrix)},
                              {"p", to_json(rep.violation->p.matrix)}};
    }
    return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace qgraph
