// jewelkit — construct and certify jewels of core graphs, sphere-system
// classes of doubled handlebodies, walls, quotient homology, and Jacobian
// forms, with exact rational arithmetic throughout.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "jewelkit/fixtures.hpp"
#include "jewelkit/io.hpp"

using namespace jewelkit;

namespace {

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2);
    text.push_back('\n');
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write file: " + out_path);
        out << text;
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write file: " + out_path);
        out << text;
    }
}

TruncationParams params_for(const MultiGraph& g, long long n_flag) {
    return n_flag > 0 ? TruncationParams{n_flag} : TruncationParams::defaults_for(g);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"jewel polytopes, sphere-system classes and their certificates"};
    app.require_subcommand(1);

    std::string graph_path, out_path, format = "json", lengths_path, fixture, complex_path;
    long long n_scale = 0;
    int rank_n = 0, jobs = 1, count = 3;
    bool want_complete = false, want_incomplete = false, want_core = false, want_noncore = false;
    bool unit_weights = false, samples_mode = false;
    int min_edges = 1, max_edges = 1 << 20;

    // graph ------------------------------------------------------------
    auto* graph_cmd = app.add_subcommand("graph", "inspect or convert a graph file");
    auto* graph_info = graph_cmd->add_subcommand("info", "components, rank, flags");
    graph_info->add_option("--graph", graph_path, "graph file (JSON or DOT)")->required();
    graph_info->add_option("--out", out_path, "write the report here");
    auto* graph_convert = graph_cmd->add_subcommand("convert", "rewrite as JSON or DOT");
    graph_convert->add_option("--graph", graph_path)->required();
    graph_convert->add_option("--format", format, "json|dot")->check(CLI::IsMember({"json", "dot"}));
    graph_convert->add_option("--out", out_path);

    // jewel ------------------------------------------------------------
    auto* jewel_cmd = app.add_subcommand("jewel", "the jewel of a core graph");
    CLI::App* jw[4];
    const char* jw_names[4] = {"faces", "hrep", "vertices", "check"};
    const char* jw_desc[4] = {"face poset as labels", "exact H-representation",
                              "exact vertex enumeration", "face-lattice agreement certificate"};
    for (int i = 0; i < 4; ++i) {
        jw[i] = jewel_cmd->add_subcommand(jw_names[i], jw_desc[i]);
        jw[i]->add_option("--graph", graph_path)->required();
        jw[i]->add_option("--N", n_scale, "truncation scale (default: a safe one)");
        jw[i]->add_option("--out", out_path);
    }

    // spheres ------------------------------------------------------------
    auto* spheres_cmd = app.add_subcommand("spheres", "sphere-system classes");
    auto* sp_enum = spheres_cmd->add_subcommand("enumerate", "classes of a given rank");
    sp_enum->add_option("--n", rank_n, "ambient rank")->required();
    sp_enum->add_flag("--complete", want_complete);
    sp_enum->add_flag("--incomplete", want_incomplete);
    sp_enum->add_flag("--core", want_core);
    sp_enum->add_flag("--non-core", want_noncore);
    sp_enum->add_option("--min-edges", min_edges);
    sp_enum->add_option("--max-edges", max_edges);
    sp_enum->add_option("--jobs", jobs, "worker count (output is order-stable)");
    sp_enum->add_option("--out", out_path);
    auto* sp_cc = spheres_cmd->add_subcommand("core-complements", "all core complements");
    sp_cc->add_option("--graph", graph_path)->required();
    sp_cc->add_option("--out", out_path);
    auto* sp_wall = spheres_cmd->add_subcommand("wall", "wall descriptor of an incomplete core system");
    sp_wall->add_option("--graph", graph_path)->required();
    sp_wall->add_option("--out", out_path);

    // homology ------------------------------------------------------------
    auto* hom_cmd = app.add_subcommand("homology", "reduced homology of a simplicial complex");
    hom_cmd->add_option("--complex", complex_path, "JSON with \"maximal_faces\"")->required();
    hom_cmd->add_option("--out", out_path);

    auto* quot_cmd = app.add_subcommand("quotient-homology",
                                        "rational homology of the quotient complex (exploratory)");
    quot_cmd->add_option("--n", rank_n, "ambient rank")->required();
    quot_cmd->add_option("--jobs", jobs, "worker count (output is order-stable)");
    quot_cmd->add_option("--out", out_path);

    // jacobian ------------------------------------------------------------
    auto* jac_cmd = app.add_subcommand("jacobian", "cycle-space Gram matrices");
    jac_cmd->add_option("--graph", graph_path);
    jac_cmd->add_option("--lengths", lengths_path, "length vector (default: uniform)");
    jac_cmd->add_flag("--unit-weights", unit_weights, "unweighted inner product");
    jac_cmd->add_flag("--boundary-samples", samples_mode, "sample forms on border facets");
    jac_cmd->add_option("--n", rank_n, "rank for --boundary-samples");
    jac_cmd->add_option("--count", count, "samples per facet");
    jac_cmd->add_option("--jobs", jobs, "worker count for --boundary-samples");
    jac_cmd->add_option("--out", out_path);

    // check ------------------------------------------------------------
    auto* check_cmd = app.add_subcommand("check", "run a built-in fixture");
    check_cmd->add_option("fixture", fixture, "figure1|figure2|figure3|all")->required();
    check_cmd->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (graph_info->parsed()) {
            DecoratedGraph d = decorated_from_file(graph_path);
            json j = {{"graph", decorated_to_json(d)},
                      {"components", components(d.graph).size()},
                      {"first_betti", first_betti(d.graph)},
                      {"n", total_n(d)},
                      {"valid_system", validate(d)},
                      {"core", d.graph.edge_count() > 0 &&
                                   jewelkit::is_core(d.graph, d.graph.all_edges())},
                      {"canonical_code", canonical_form(d.graph, &d.genus).code}};
            emit(j, out_path);
        } else if (graph_convert->parsed()) {
            DecoratedGraph d = decorated_from_file(graph_path);
            if (format == "dot")
                emit_text(decorated_to_dot(d), out_path);
            else
                emit(decorated_to_json(d), out_path);
        } else if (jw[0]->parsed()) {
            MultiGraph g = graph_from_file(graph_path);
            emit(poset_to_json(face_poset(g)), out_path);
        } else if (jw[1]->parsed()) {
            MultiGraph g = graph_from_file(graph_path);
            emit(polytope_to_json(hrep(g, params_for(g, n_scale))), out_path);
        } else if (jw[2]->parsed()) {
            MultiGraph g = graph_from_file(graph_path);
            emit(points_to_json(vertices(hrep(g, params_for(g, n_scale)))), out_path);
        } else if (jw[3]->parsed()) {
            MultiGraph g = graph_from_file(graph_path);
            TruncationParams params = params_for(g, n_scale);
            LatticeReport rep = lattice_check_report(g, params);
            json j = {{"N", params.N},
                      {"conservative_margin", satisfies_conservative_margin(g, params)},
                      {"lattice_agrees", rep.ok},
                      {"detail", rep.detail}};
            emit(j, out_path);
            if (!rep.ok) return 1;
        } else if (sp_enum->parsed()) {
            ClassFilter f;
            if (want_complete && want_incomplete)
                throw std::invalid_argument("--complete and --incomplete exclude each other");
            if (want_core && want_noncore)
                throw std::invalid_argument("--core and --non-core exclude each other");
            if (want_complete) f.complete = true;
            if (want_incomplete) f.complete = false;
            if (want_core) f.core = true;
            if (want_noncore) f.core = false;
            f.min_edges = min_edges;
            f.max_edges = max_edges;
            emit(classes_to_json(enumerate_classes(rank_n, f, jobs)), out_path);
        } else if (sp_cc->parsed()) {
            DecoratedGraph d = decorated_from_file(graph_path);
            json list = json::array();
            for (EdgeSet t : core_complements(d)) {
                json ids = json::array();
                for (const auto& id : d.graph.edge_ids(t)) ids.push_back(id);
                list.push_back(std::move(ids));
            }
            emit({{"core_complements", std::move(list)}}, out_path);
        } else if (sp_wall->parsed()) {
            emit(wall_to_json(pieces(decorated_from_file(graph_path))), out_path);
        } else if (hom_cmd->parsed()) {
            std::ifstream in(complex_path);
            if (!in) throw std::invalid_argument("cannot open file: " + complex_path);
            json j = json::parse(in);
            auto faces = j.at("maximal_faces").get<std::vector<std::vector<int>>>();
            emit(homology_to_json(simplicial_homology(faces)), out_path);
        } else if (quot_cmd->parsed()) {
            ChainComplex c = quotient_chain_complex(rank_n, jobs);
            HomologyResult h = rational_homology(c);
            json labels = json::array();
            for (const auto& deg : c.labels) labels.push_back(deg.size());
            json j = {{"exploratory", true},
                      {"note", "homology of the quotient of the incomplete-core subcomplex; "
                               "not the homology of the subcomplex itself"},
                      {"n", rank_n},
                      {"generators_per_degree", std::move(labels)},
                      {"homology", homology_to_json(h)}};
            emit(j, out_path);
        } else if (jac_cmd->parsed()) {
            if (samples_mode) {
                if (rank_n <= 0)
                    throw std::invalid_argument("--boundary-samples needs --n");
                emit(samples_to_json(boundary_samples(rank_n, count, 1, jobs)), out_path);
            } else {
                if (graph_path.empty()) throw std::invalid_argument("jacobian needs --graph");
                MultiGraph g = graph_from_file(graph_path);
                std::vector<Rat> lengths;
                if (lengths_path.empty()) {
                    lengths.assign(g.edge_count(), Rat(1, std::max(g.edge_count(), 1)));
                    for (Rat& l : lengths) l.canonicalize();
                } else {
                    std::ifstream in(lengths_path);
                    if (!in) throw std::invalid_argument("cannot open file: " + lengths_path);
                    lengths = lengths_from_json(g, json::parse(in));
                }
                MetricGraph mg{g, lengths};
                QuadForm q = jacobian_form(
                    mg, unit_weights ? EdgeWeighting::unit : EdgeWeighting::lengths);
                json basis = json::array();
                for (const auto& z : cycle_basis(g)) basis.push_back(z);
                json j = {{"form", quadform_to_json(q)},
                          {"positive_definite", is_positive_definite(q)},
                          {"det", rat_to_string(quadform_det(q))},
                          {"cycle_basis", std::move(basis)}};
                emit(j, out_path);
            }
        } else if (check_cmd->parsed()) {
            std::vector<std::string> names =
                fixture == "all" ? fixture_names() : std::vector<std::string>{fixture};
            json reports = json::array();
            bool all_pass = true;
            for (const auto& name : names) {
                FixtureReport r = run_fixture(name);
                all_pass = all_pass && r.pass;
                reports.push_back({{"fixture", r.name}, {"pass", r.pass}, {"report", r.report}});
            }
            emit(names.size() == 1 ? reports[0] : json{{"fixtures", reports}}, out_path);
            if (!all_pass) return 1;
        }
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
