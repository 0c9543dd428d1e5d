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

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qgraph/gen.hpp"
#include "qgraph/io.hpp"

namespace qgraph {

// Exit codes: 0 ok, 1 negative verdict, 2 validation/schema, 3 internal
// inconsistency or failed re-verification.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInconsistency = 3;

namespace cli {

struct Output {
    std::optional<std::string> out_path;
    /// Print the report; when -o is given, write `artifact` (the report
    /// itself for checkers, the produced instance for pipeline producers).
    void emit(std::ostream& os, const Json& report, const Json& artifact) const {
        if (out_path) write_json_file(*out_path, artifact);
        os << report.dump(2) << "\n";
    }
};

inline Json report_skeleton(const std::string& command, const Tolerance& tol) {
    Json r;
    r["report_version"] = 1;
    r["command"] = command;
    r["tolerance"] = tolerance_json(tol);
    return r;
}

inline int cmd_connectedness(const std::string& input, std::uint64_t seed, const Output& out,
                             std::ostream& os) {
    Instance inst = load_instance_file(input);
    const Tolerance tol = resolve_tolerance(inst.meta);
    QuantumGraph s = build_quantum_graph(inst, tol);
    ConnectivityCertificate cert = is_connected(s, seed);
    Json report = report_skeleton("connectedness", tol);
    report["options"] = Json{{"seed", seed}};
    report["instance"] = make_instance_json(inst.kind, inst.payload, inst.meta);
    report["result"] = certificate_json(cert);
    std::string summary = std::string(verdict_name(cert.verdict));
    if (cert.verdict == Verdict::Connected) {
        summary += " (stabilization power " + std::to_string(cert.stabilization_power) +
                   ", commutant dim 1)";
    } else {
        summary += " (commutant dim " + std::to_string(cert.commutant_dim) + ", witness rank " +
                   std::to_string(cert.witness->rank) + ")";
    }
    report["summary"] = summary;
    out.emit(os, report, report);
    return cert.verdict == Verdict::Connected ? kExitOk : kExitNegative;
}

inline int cmd_connectivity(const std::string& input, std::uint64_t seed, int restarts, int samples,
                            const std::optional<std::string>& lgp_rep, const Output& out,
                            std::ostream& os, std::ostream& err) {
    Instance inst = load_instance_file(input);
    const Tolerance tol = resolve_tolerance(inst.meta);
    QuantumGraph s = build_quantum_graph(inst, tol);
    Json report = report_skeleton("connectivity", tol);
    report["options"] = Json{{"seed", seed}, {"restarts", restarts}, {"samples", samples}};
    report["instance"] = make_instance_json(inst.kind, inst.payload, inst.meta);

    std::optional<int> lgp_lower;
    Json lgp_block;
    if (lgp_rep) {
        Instance rep_inst = load_instance_file(*lgp_rep);
        KrausMap phi = build_kraus_map(rep_inst, tol);
        LgpBoundResult lb = lgp_connectivity_bound(phi, s, samples, seed);
        lgp_block["orth_rep"] = orth_rep_json(lb.orth);
        lgp_block["lgp"] = lgp_json(lb.lgp);
        if (lb.bound) {
            lgp_block["bound"] = *lb.bound;
            lgp_block["note"] = "conditional on sampled verification";
            lgp_lower = lb.bound;
        } else {
            lgp_block["bound"] = nullptr;
            err << "warning: the supplied representation failed a sampled check; LGP bound omitted\n";
        }
        report["aux_instance"] = make_instance_json(rep_inst.kind, rep_inst.payload, rep_inst.meta);
    }

    SearchBudget budget;
    budget.seed = seed;
    budget.restarts = restarts;
    ConnectivityBounds bounds = separator_search(s, budget, lgp_lower);
    Json result = bounds_json(bounds);
    if (!lgp_block.empty()) result["lgp_route"] = std::move(lgp_block);
    report["result"] = std::move(result);
    report["summary"] = "connectivity in [" + std::to_string(bounds.lower) + ", " +
                        std::to_string(bounds.upper) + "]" +
                        (bounds.lower_conditional ? " (lower bound conditional)" : "");
    out.emit(os, report, report);
    return kExitOk;
}

inline int cmd_lift(const std::string& input, const Output& out, std::ostream& os) {
    Instance inst = load_instance_file(input);
    const Tolerance tol = resolve_tolerance(inst.meta);
    ClassicalGraph g = build_classical_graph(inst);
    QuantumGraph s = lift(g, tol);
    InstanceMeta meta;
    if (inst.meta.name) meta.name = *inst.meta.name + " (lifted)";
    Json produced = quantum_graph_instance(s, meta);
    Json report = report_skeleton("lift", tol);
    report["instance"] = make_instance_json(inst.kind, inst.payload, inst.meta);
    report["result"] = Json{{"dimension", s.dim()}, {"instance", produced}};
    report["summary"] = "lifted to an operator system of dimension " + std::to_string(s.dim()) +
                        " in M_" + std::to_string(s.ambient_dim());
    out.emit(os, report, produced);
    return kExitOk;
}

inline int cmd_confusability(const std::string& input, const std::optional<std::string>& basis_file,
                             const Output& out, std::ostream& os) {
    Instance inst = load_instance_file(input);
    const Tolerance tol = resolve_tolerance(inst.meta);
    QuantumGraph s = build_quantum_graph(inst, tol);
    OrthonormalBasisCn basis = OrthonormalBasisCn::standard(s.ambient_dim());
    Json report = report_skeleton("confusability", tol);
    report["instance"] = make_instance_json(inst.kind, inst.payload, inst.meta);
    if (basis_file) {
        Instance basis_inst = load_instance_file(*basis_file);
        basis = build_basis(basis_inst, tol);
        report["aux_instance"] = make_instance_json(basis_inst.kind, basis_inst.payload, basis_inst.meta);
    }
    ClassicalGraph g = confusability(s, basis);
    Json produced = classical_graph_instance(g);
    report["result"] = Json{{"edges", g.edge_count()},
                            {"connected", classical_connected(g)},
                            {"instance", produced}};
    report["summary"] = "confusability graph with " + std::to_string(g.edge_count()) + " edges (" +
                        (classical_connected(g) ? "connected" : "disconnected") + ")";
    out.emit(os, report, produced);
    return kExitOk;
}

inline int cmd_channel_graph(const std::string& input, std::uint64_t seed, const Output& out,
                             std::ostream& os) {
    Instance inst = load_instance_file(input);
    const Tolerance tol = resolve_tolerance(inst.meta);
    KrausMap phi = build_kraus_map(inst, tol);
    QuantumGraph s = channel_confusability(phi);
    ConnectivityCertificate cert = is_connected(s, seed);
    Json produced = quantum_graph_instance(s);
    Json report = report_skeleton("channel-graph", tol);
    report["options"] = Json{{"seed", seed}};
    report["instance"] = make_instance_json(inst.kind, inst.payload, inst.meta);
    report["result"] = Json{{"dimension", s.dim()},
                            {"connectedness", certificate_json(cert)},
                            {"instance", produced}};
    report["summary"] = "confusability graph of dimension " + std::to_string(s.dim()) + " in M_" +
                        std::to_string(s.ambient_dim()) + ", " + verdict_name(cert.verdict);
    out.emit(os, report, produced);
    return kExitOk;
}

inline int cmd_tree_packing(const std::string& input, const std::string& partition_file,
                            const Output& out, std::ostream& os) {
    Instance inst = load_instance_file(input);
    const Tolerance tol = resolve_tolerance(inst.meta);
    QuantumGraph s = build_quantum_graph(inst, tol);
    Instance part_inst = load_instance_file(partition_file);
    std::vector<Projection> parts = build_partition(part_inst, tol);
    TreePackingResult r = tree_packing_check(s, parts);
    Json report = report_skeleton("tree-packing", tol);
    report["instance"] = make_instance_json(inst.kind, inst.payload, inst.meta);
    report["aux_instance"] = make_instance_json(part_inst.kind, part_inst.payload, part_inst.meta);
    report["result"] = tree_packing_json(r, static_cast<int>(parts.size()));
    report["summary"] = "cross-dimension sum " + std::to_string(r.sum) + " vs bound " +
                        std::to_string(r.bound) + ": " + (r.holds ? "holds" : "fails");
    out.emit(os, report, report);
    return r.holds ? kExitOk : kExitNegative;
}

inline int cmd_check_orth_rep(const std::string& kraus_file, const std::string& graph_file,
                              int samples, std::uint64_t seed, const Output& out, std::ostream& os) {
    Instance kraus_inst = load_instance_file(kraus_file);
    Instance graph_inst = load_instance_file(graph_file);
    const Tolerance tol = resolve_tolerance(graph_inst.meta);
    KrausMap phi = build_kraus_map(kraus_inst, tol);
    QuantumGraph s = build_quantum_graph(graph_inst, tol);
    OrthRepReport rep = check_orth_rep(phi, s, samples, seed);
    Json report = report_skeleton("check-orth-rep", tol);
    report["options"] = Json{{"samples", samples}, {"seed", seed}};
    report["instance"] = make_instance_json(kraus_inst.kind, kraus_inst.payload, kraus_inst.meta);
    report["aux_instance"] = make_instance_json(graph_inst.kind, graph_inst.payload, graph_inst.meta);
    report["result"] = orth_rep_json(rep);
    report["summary"] = std::string(sampled_verdict_name(rep.verdict())) + " over " +
                        std::to_string(rep.pairs_tested) + " annihilating pairs";
    out.emit(os, report, report);
    return rep.passed() ? kExitOk : kExitNegative;
}

inline int cmd_check_lgp(const std::string& kraus_file, const std::string& graph_file, int samples,
                         std::uint64_t seed, const Output& out, std::ostream& os) {
    Instance kraus_inst = load_instance_file(kraus_file);
    Instance graph_inst = load_instance_file(graph_file);
    const Tolerance tol = resolve_tolerance(graph_inst.meta);
    KrausMap phi = build_kraus_map(kraus_inst, tol);
    QuantumGraph s = build_quantum_graph(graph_inst, tol);
    LgpReport rep = check_lgp(phi, s, samples, seed);
    Json report = report_skeleton("check-lgp", tol);
    report["options"] = Json{{"samples", samples}, {"seed", seed}};
    report["instance"] = make_instance_json(kraus_inst.kind, kraus_inst.payload, kraus_inst.meta);
    report["aux_instance"] = make_instance_json(graph_inst.kind, graph_inst.payload, graph_inst.meta);
    report["result"] = lgp_json(rep);
    report["summary"] = std::string(sampled_verdict_name(rep.verdict())) + " over " +
                        std::to_string(rep.projections_tested) + " kernel projections";
    out.emit(os, report, report);
    return rep.passed() ? kExitOk : kExitNegative;
}

struct GenerateOptions {
    std::string kind;  // graph | quantum-graph | block-system | basis | channel | direct-sum-channel | partition | hamming
    int n = 4;
    double p = 0.5;
    int d = 2;
    int kraus_ops = 2;
    int generators = 2;
    int parts = 2;
    bool haar = false;
    std::vector<int> blocks;
    std::uint64_t seed = kDefaultSeed;
};

inline int cmd_generate(const GenerateOptions& opt, const Output& out, std::ostream& os) {
    Rng rng = Rng(opt.seed).stream("generate");
    const Tolerance tol = resolve_tolerance({});
    InstanceMeta meta;
    meta.seed = opt.seed;
    Json produced;
    if (opt.kind == "graph") {
        meta.name = "G(" + std::to_string(opt.n) + ", p)";
        produced = classical_graph_instance(random_graph(rng, opt.n, opt.p), meta);
    } else if (opt.kind == "quantum-graph") {
        meta.name = "random operator system";
        produced = quantum_graph_instance(random_operator_system(rng, opt.n, opt.generators, tol), meta);
    } else if (opt.kind == "block-system") {
        if (opt.blocks.size() < 2) throw ValidationError("generate: --blocks needs at least two sizes");
        meta.name = "block operator system";
        produced = quantum_graph_instance(
            random_block_operator_system(rng, opt.blocks, opt.generators, tol), meta);
    } else if (opt.kind == "basis") {
        meta.name = "haar basis";
        produced = basis_instance(random_basis(rng, opt.n, tol), meta);
    } else if (opt.kind == "channel") {
        meta.name = "stinespring channel";
        produced = kraus_instance(random_channel(rng, opt.n, opt.d, opt.kraus_ops, tol), meta);
    } else if (opt.kind == "direct-sum-channel") {
        if (opt.blocks.size() != 2) throw ValidationError("generate: --blocks needs two input sizes");
        meta.name = "direct sum channel";
        produced = kraus_instance(random_direct_sum_channel(rng, opt.blocks[0], opt.blocks[1], opt.d,
                                                            opt.d, opt.kraus_ops, tol),
                                  meta);
    } else if (opt.kind == "partition") {
        std::vector<Projection> parts = random_partition(rng, opt.n, opt.parts, opt.haar, tol);
        if (opt.haar) {
            Json payload;
            payload["n"] = opt.n;
            Json projections = Json::array();
            for (const Projection& part : parts) projections.push_back(to_json(part.matrix));
            payload["projections"] = std::move(projections);
            meta.name = "haar partition";
            produced = make_instance_json("partition", std::move(payload), meta);
        } else {
            std::vector<std::vector<int>> sets;
            for (const Projection& part : parts) {
                std::vector<int> set;
                for (int c = 0; c < part.rank; ++c) {
                    for (int r = 0; r < opt.n; ++r) {
                        if (std::abs(part.range_basis(r, c)) > 0.5) set.push_back(r);
                    }
                }
                std::sort(set.begin(), set.end());
                sets.push_back(std::move(set));
            }
            meta.name = "coordinate partition";
            produced = partition_instance(opt.n, sets, meta);
        }
    } else if (opt.kind == "hamming") {
        meta.name = "quantum hamming cube";
        produced = quantum_graph_instance(quantum_hamming_cube(opt.n, tol), meta);
    } else {
        throw ValidationError("generate: unknown kind '" + opt.kind + "'");
    }
    Json report = report_skeleton("generate", tol);
    report["options"] = Json{{"kind", opt.kind}, {"seed", opt.seed}};
    report["result"] = Json{{"instance", produced}};
    report["summary"] = "generated " + opt.kind + " instance (seed " + std::to_string(opt.seed) + ")";
    out.emit(os, report, produced);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify: re-check an emitted report (or validate an instance file).
// ---------------------------------------------------------------------------

inline void verify_require(bool ok, const std::string& what) {
    if (!ok) throw InternalInconsistencyError("verify: " + what);
}

inline int cmd_verify(const std::string& path, std::ostream& os) {
    Json j = read_json_file(path);
    if (!j.contains("command")) {
        // Instance file: schema validation is the whole check.
        Instance inst = parse_instance(j);
        const Tolerance tol = resolve_tolerance(inst.meta);
        if (inst.kind == "quantum_graph") build_quantum_graph(inst, tol);
        if (inst.kind == "classical_graph") build_classical_graph(inst);
        if (inst.kind == "kraus_map") build_kraus_map(inst, tol);
        if (inst.kind == "basis") build_basis(inst, tol);
        if (inst.kind == "partition") build_partition(inst, tol);
        os << "instance file valid (" << inst.kind << ")\n";
        return kExitOk;
    }
    const std::string command = j["command"].get<std::string>();
    const Json& result = j.at("result");
    Tolerance tol;
    if (j.contains("tolerance")) {
        tol = Tolerance{schema_number(j["tolerance"]["rank_rel"], "tolerance.rank_rel"),
                        schema_number(j["tolerance"]["residual_abs"], "tolerance.residual_abs")};
    }
    const std::uint64_t seed =
        (j.contains("options") && j["options"].contains("seed")) ? j["options"]["seed"].get<std::uint64_t>()
                                                                 : kDefaultSeed;
    auto instance_of = [&](const char* key) { return parse_instance(j.at(key)); };

    if (command == "connectedness") {
        QuantumGraph s = build_quantum_graph(instance_of("instance"), tol);
        ConnectivityCertificate cert = is_connected(s, seed);
        verify_require(std::string(verdict_name(cert.verdict)) == result.at("verdict").get<std::string>(),
                       "verdict changed on re-run");
        verify_require(cert.stabilization_power == result.at("stabilization_power").get<int>(),
                       "stabilization power changed on re-run");
        verify_require(cert.commutant_dim == result.at("commutant_dim").get<int>(),
                       "commutant dimension changed on re-run");
        if (cert.verdict == Verdict::Disconnected) {
            Projection witness =
                Projection::from_matrix(schema_matrix(result.at("witness"), "result.witness"), tol);
            verify_require(witness.rank == result.at("witness_rank").get<int>(), "witness rank mismatch");
            verify_require(witness.rank > 0 && witness.rank < s.ambient_dim(), "witness is trivial");
            const CMat rest = CMat::Identity(s.ambient_dim(), s.ambient_dim()) - witness.matrix;
            verify_require(detail::max_cut_residual(s, witness.matrix, rest) <= tol.residual_abs,
                           "witness does not annihilate P S (I-P)");
        }
    } else if (command == "connectivity") {
        QuantumGraph s = build_quantum_graph(instance_of("instance"), tol);
        const int lower = result.at("lower").get<int>();
        const int upper = result.at("upper").get<int>();
        verify_require(lower <= upper, "lower bound exceeds upper bound");
        if (result.contains("best_separator")) {
            const Json& sep = result["best_separator"];
            Projection p = Projection::from_matrix(schema_matrix(sep.at("projection"),
                                                                 "result.best_separator.projection"),
                                                   tol);
            verify_require(p.rank == upper, "upper bound does not match the separator rank");
            auto rep = is_separator(s.with_tolerance(tol.tightened(10.0)), p, seed);
            verify_require(rep.has_value(), "best separator failed re-verification");
        }
    } else if (command == "lift") {
        ClassicalGraph g = build_classical_graph(instance_of("instance"));
        QuantumGraph s = lift(g, tol);
        Instance produced = parse_instance(result.at("instance"));
        QuantumGraph emitted = build_quantum_graph(produced, tol);
        verify_require(emitted.dim() == s.dim(), "lifted dimension changed");
        verify_require(emitted.space().contains_subspace(s.space()) &&
                           s.space().contains_subspace(emitted.space()),
                       "lifted span changed");
    } else if (command == "confusability") {
        QuantumGraph s = build_quantum_graph(instance_of("instance"), tol);
        OrthonormalBasisCn basis = j.contains("aux_instance")
                                       ? build_basis(instance_of("aux_instance"), tol)
                                       : OrthonormalBasisCn::standard(s.ambient_dim());
        ClassicalGraph expect = confusability(s, basis);
        ClassicalGraph emitted = build_classical_graph(parse_instance(result.at("instance")));
        verify_require(emitted == expect, "confusability graph changed on re-run");
    } else if (command == "channel-graph") {
        KrausMap phi = build_kraus_map(instance_of("instance"), tol);
        QuantumGraph s = channel_confusability(phi);
        QuantumGraph emitted = build_quantum_graph(parse_instance(result.at("instance")), tol);
        verify_require(emitted.dim() == s.dim() && emitted.space().contains_subspace(s.space()),
                       "confusability span changed on re-run");
        ConnectivityCertificate cert = is_connected(s, seed);
        verify_require(std::string(verdict_name(cert.verdict)) ==
                           result.at("connectedness").at("verdict").get<std::string>(),
                       "connectedness verdict changed on re-run");
    } else if (command == "tree-packing") {
        QuantumGraph s = build_quantum_graph(instance_of("instance"), tol);
        std::vector<Projection> parts = build_partition(instance_of("aux_instance"), tol);
        TreePackingResult r = tree_packing_check(s, parts);
        verify_require(r.sum == result.at("sum").get<int>(), "cross-dimension sum changed");
        verify_require(r.holds == result.at("holds").get<bool>(), "verdict changed");
    } else if (command == "check-orth-rep") {
        KrausMap phi = build_kraus_map(instance_of("instance"), tol);
        QuantumGraph s = build_quantum_graph(instance_of("aux_instance"), tol);
        const int samples = j.at("options").at("samples").get<int>();
        OrthRepReport rep = check_orth_rep(phi, s, samples, seed);
        verify_require(std::string(sampled_verdict_name(rep.verdict())) ==
                           result.at("verdict").get<std::string>(),
                       "verdict changed on re-run");
        verify_require(rep.pairs_tested == result.at("pairs_tested").get<int>(),
                       "tested pair count changed on re-run");
    } else if (command == "check-lgp") {
        KrausMap phi = build_kraus_map(instance_of("instance"), tol);
        QuantumGraph s = build_quantum_graph(instance_of("aux_instance"), tol);
        const int samples = j.at("options").at("samples").get<int>();
        LgpReport rep = check_lgp(phi, s, samples, seed);
        verify_require(std::string(sampled_verdict_name(rep.verdict())) ==
                           result.at("verdict").get<std::string>(),
                       "verdict changed on re-run");
    } else if (command == "generate") {
        parse_instance(result.at("instance"));
    } else {
        throw ValidationError("verify: unknown command '" + command + "' in report");
    }
    os << "report verified (" << command << ")\n";
    return kExitOk;
}

}  // namespace cli

/// Entry point shared by the binary and the in-process tests.
inline int run_cli(std::vector<std::string> args, std::ostream& os, std::ostream& err) {
    CLI::App app{"quantum graph (operator system) connectivity toolkit"};
    app.require_subcommand(1);

    std::string input, second_input, partition_file;
    std::optional<std::string> out_path, basis_file, lgp_file;
    std::uint64_t seed = kDefaultSeed;
    int restarts = 64;
    int samples = 64;
    cli::GenerateOptions gen_opt;

    auto add_out = [&](CLI::App* cmd) { cmd->add_option("-o,--out", out_path, "write the produced artifact to this file"); };

    CLI::App* conn = app.add_subcommand("connectedness", "decide connectedness with certificates");
    conn->add_option("input", input, "quantum_graph instance file")->required();
    conn->add_option("--seed", seed, "root random seed");
    add_out(conn);

    CLI::App* bounds = app.add_subcommand("connectivity", "certified k-connectivity bounds");
    bounds->add_option("input", input, "quantum_graph instance file")->required();
    bounds->add_option("--seed", seed, "root random seed");
    bounds->add_option("--restarts", restarts, "local-refinement restarts");
    bounds->add_option("--samples", samples, "samples for the LGP route checks");
    bounds->add_option("--lgp-rep", lgp_file, "kraus_map instance used as an LGP representation");
    add_out(bounds);

    CLI::App* lift_cmd = app.add_subcommand("lift", "lift a classical graph to its operator system");
    lift_cmd->add_option("input", input, "classical_graph instance file")->required();
    add_out(lift_cmd);

    CLI::App* conf = app.add_subcommand("confusability", "confusability graph w.r.t. a basis");
    conf->add_option("input", input, "quantum_graph instance file")->required();
    conf->add_option("--basis", basis_file, "basis instance file (default: standard basis)");
    add_out(conf);

    CLI::App* chan = app.add_subcommand("channel-graph", "confusability graph of a channel");
    chan->add_option("input", input, "kraus_map instance file")->required();
    chan->add_option("--seed", seed, "root random seed");
    add_out(chan);

    CLI::App* tree = app.add_subcommand("tree-packing", "cross-dimension partition bound");
    tree->add_option("input", input, "quantum_graph instance file")->required();
    tree->add_option("--partition", partition_file, "partition instance file")->required();
    add_out(tree);

    CLI::App* orth = app.add_subcommand("check-orth-rep", "sampled orthogonal-representation check");
    orth->add_option("kraus", input, "kraus_map instance file")->required();
    orth->add_option("graph", second_input, "quantum_graph instance file")->required();
    orth->add_option("--samples", samples, "sampled annihilating-pair candidates");
    orth->add_option("--seed", seed, "root random seed");
    add_out(orth);

    CLI::App* lgp = app.add_subcommand("check-lgp", "sampled locally-general-position check");
    lgp->add_option("kraus", input, "kraus_map instance file")->required();
    lgp->add_option("graph", second_input, "quantum_graph instance file")->required();
    lgp->add_option("--samples", samples, "sampled rank-one probes");
    lgp->add_option("--seed", seed, "root random seed");
    add_out(lgp);

    CLI::App* gen = app.add_subcommand("generate", "generate random seeded instances");
    gen->add_option("--kind", gen_opt.kind,
                    "graph | quantum-graph | block-system | basis | channel | direct-sum-channel | "
                    "partition | hamming")
        ->required();
    gen->add_option("--n", gen_opt.n, "size parameter");
    gen->add_option("--p", gen_opt.p, "edge probability for graphs");
    gen->add_option("--d", gen_opt.d, "output dimension for channels");
    gen->add_option("--kraus-ops", gen_opt.kraus_ops, "Kraus operator count");
    gen->add_option("--gens", gen_opt.generators, "generator count for operator systems");
    gen->add_option("--parts", gen_opt.parts, "part count for partitions");
    gen->add_flag("--haar", gen_opt.haar, "Haar-conjugate the partition");
    gen->add_option("--blocks", gen_opt.blocks, "block sizes for block systems / direct sums");
    gen->add_option("--seed", gen_opt.seed, "root random seed");
    add_out(gen);

    CLI::App* verify = app.add_subcommand("verify", "re-verify an emitted report or instance file");
    verify->add_option("input", input, "report or instance file")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            os << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    cli::Output out{out_path};
    try {
        if (conn->parsed()) return cli::cmd_connectedness(input, seed, out, os);
        if (bounds->parsed()) return cli::cmd_connectivity(input, seed, restarts, samples, lgp_file, out, os, err);
        if (lift_cmd->parsed()) return cli::cmd_lift(input, out, os);
        if (conf->parsed()) return cli::cmd_confusability(input, basis_file, out, os);
        if (chan->parsed()) return cli::cmd_channel_graph(input, seed, out, os);
        if (tree->parsed()) return cli::cmd_tree_packing(input, partition_file, out, os);
        if (orth->parsed()) return cli::cmd_check_orth_rep(input, second_input, samples, seed, out, os);
        if (lgp->parsed()) return cli::cmd_check_lgp(input, second_input, samples, seed, out, os);
        if (gen->parsed()) return cli::cmd_generate(gen_opt, out, os);
        if (verify->parsed()) return cli::cmd_verify(input, os);
    } catch (const InternalInconsistencyError& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return kExitInconsistency;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    err << "error: no subcommand\n";
    return kExitValidation;
}

}  // namespace qgraph
