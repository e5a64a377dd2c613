// Command-line front end: generate the layered packings, verify claimed
// structure, build nerves, certify the average-kissing bound, project, and
// report convergence. Exit codes: 0 pass, 1 failed check or domain error,
// 2 usage or file-parse error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "akn/construction.hpp"
#include "akn/io.hpp"
#include "akn/packing.hpp"
#include "akn/shell_bound.hpp"

namespace {

void write_packing_output(const akn::Packing& packing, const std::string& out_path) {
    if (out_path.empty()) {
        akn::save_packing_stream(packing, std::cout);
    } else {
        akn::save_packing(packing, out_path);
        std::cerr << "wrote " << packing.size() << " balls to " << out_path << "\n";
    }
}

akn::NerveStrategy parse_strategy(const std::string& name) {
    return name == "grid" ? akn::NerveStrategy::Grid : akn::NerveStrategy::AllPairs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Layered sphere packings on the 3-sphere: construction of the "
                 "666/53 sequence and the 8+4*sqrt(3) average-kissing bound"};
    app.require_subcommand(1);
    int exit_code = 0;

    // generate {d600 | pn}
    CLI::App* generate = app.add_subcommand("generate", "Generate a packing file");
    generate->require_subcommand(1);
    std::string gen_out;

    CLI::App* gen_d600 =
        generate->add_subcommand("d600", "The 120-ball packing with 720 tangencies");
    gen_d600->add_option("-o,--output", gen_out, "Output file (default: stdout)");
    gen_d600->callback([&] { write_packing_output(akn::build_d600(), gen_out); });

    CLI::App* gen_pn = generate->add_subcommand(
        "pn", "The layered packing P_n with 118+106n balls");
    int pn_n = 0;
    std::string pn_mode = "direct";
    gen_pn->add_option("--n", pn_n, "Number of contraction layers")->required();
    gen_pn->add_option("--mode", pn_mode,
                       "direct validates every pair numerically (n <= 12); "
                       "windowed relies on the certified window recurrence")
        ->check(CLI::IsMember({"direct", "windowed"}));
    gen_pn->add_option("-o,--output", gen_out, "Output file (default: stdout)");
    gen_pn->callback([&] {
        const akn::SeedData seed = akn::build_sigma(akn::build_d600());
        const akn::BuildMode mode =
            pn_mode == "direct" ? akn::BuildMode::Direct : akn::BuildMode::Windowed;
        write_packing_output(akn::build_pn(seed, pn_n, mode).packing, gen_out);
    });

    // verify FILE
    CLI::App* verify = app.add_subcommand("verify", "Check pairwise disjointness");
    std::string verify_file;
    double verify_rtol = akn::kDefaultTangencyRtol;
    verify->add_option("file", verify_file, "Packing file")->required();
    verify->add_option("--rtol", verify_rtol, "Relative tangency tolerance");
    verify->callback([&] {
        const akn::Packing packing = akn::load_packing(verify_file);
        const akn::ValidityReport report = akn::validate_packing(packing, verify_rtol);
        std::cout << "balls: " << packing.size() << "\n";
        if (report.ball_a >= 0) {
            std::cout << "tightest pair: (" << report.ball_a << ", " << report.ball_b
                      << ") gap " << report.worst_gap << "\n";
        }
        std::cout << "valid: " << (report.ok ? "yes" : "no") << "\n";
        if (!report.ok) {
            exit_code = 1;
        }
    });

    // nerve FILE
    CLI::App* nerve_cmd = app.add_subcommand("nerve", "Build the tangency graph");
    std::string nerve_file;
    std::string nerve_strategy = "all_pairs";
    double nerve_rtol = akn::kDefaultTangencyRtol;
    nerve_cmd->add_option("file", nerve_file, "Packing file")->required();
    nerve_cmd->add_option("--strategy", nerve_strategy, "Candidate-pair strategy")
        ->check(CLI::IsMember({"all_pairs", "grid"}));
    nerve_cmd->add_option("--rtol", nerve_rtol, "Relative tangency tolerance");
    nerve_cmd->callback([&] {
        const akn::Packing packing = akn::load_packing(nerve_file);
        const akn::NerveGraph nerve =
            akn::build_nerve(packing, nerve_rtol, parse_strategy(nerve_strategy));
        std::size_t min_degree = nerve.vertex_count ? nerve.vertex_count : 0;
        std::size_t max_degree = 0;
        for (std::size_t v = 0; v < nerve.vertex_count; ++v) {
            min_degree = std::min(min_degree, nerve.degree(v));
            max_degree = std::max(max_degree, nerve.degree(v));
        }
        const bool condition = akn::check_nerve_condition(
            static_cast<long long>(nerve.vertex_count),
            static_cast<long long>(nerve.edge_count()));
        std::cout << "vertices: " << nerve.vertex_count << "\n"
                  << "edges: " << nerve.edge_count() << "\n";
        if (nerve.vertex_count > 0) {
            std::cout << "degree: " << min_degree << ".." << max_degree << "\n";
        }
        std::cout << "2|E| < (8+4*sqrt(3))|V|: " << (condition ? "yes" : "no") << "\n";
        if (!condition) {
            exit_code = 1;
        }
    });

    // stats FILE
    CLI::App* stats_cmd = app.add_subcommand("stats", "Average kissing number");
    std::string stats_file;
    stats_cmd->add_option("file", stats_file, "Packing file")->required();
    stats_cmd->callback([&] {
        const akn::Packing packing = akn::load_packing(stats_file);
        const akn::NerveGraph nerve = akn::build_nerve(packing);
        const akn::PackingStats stats = akn::packing_stats(packing, nerve);
        std::cout << "balls: " << stats.ball_count << "\n"
                  << "tangencies: " << stats.tangency_count << "\n"
                  << "k = " << stats.average_kissing.num << "/"
                  << stats.average_kissing.den << " = " << std::setprecision(10)
                  << stats.average_kissing_real << "\n"
                  << "max neighbors at least as large: " << stats.larger_neighbor_max
                  << "\n";
    });

    // bound FILE
    CLI::App* bound_cmd =
        app.add_subcommand("bound", "Certify k(P) < 8+4*sqrt(3) by shell areas");
    std::string bound_file;
    double bound_rho = std::sqrt(3.0);
    bound_cmd->add_option("file", bound_file, "Packing file (r3 chart)")->required();
    bound_cmd->add_option("--rho", bound_rho, "Shell scale in (1, 3)");
    bound_cmd->callback([&] {
        const akn::Packing packing = akn::load_packing(bound_file);
        const akn::NerveGraph nerve = akn::build_nerve(packing);
        akn::ShellParams params;
        params.rho = bound_rho;
        const akn::ShellReport report = akn::shell_certificate(packing, nerve, params);
        std::cout << std::setprecision(10) << "rho: " << params.rho << "\n"
                  << "max shell occupancy: " << report.max_occupancy << "\n"
                  << "min tangent pair sum: " << report.min_tangent_pair_sum
                  << " (constant " << report.pair_sum_value << ")\n"
                  << "k(P): " << report.average_kissing << "\n"
                  << "bound: " << report.implied_bound << "\n"
                  << "pass: " << (report.pass ? "yes" : "no") << "\n";
        if (!report.pass) {
            exit_code = 1;
        }
    });

    // project FILE --pole w,x,y,z
    CLI::App* project_cmd = app.add_subcommand(
        "project", "Stereographic projection of an s3 packing to r3");
    std::string project_file, project_out;
    std::vector<double> pole_coords;
    project_cmd->add_option("file", project_file, "Packing file (s3 chart)")->required();
    project_cmd
        ->add_option("--pole", pole_coords,
                     "Projection pole w,x,y,z (normalized if not unit)")
        ->required()
        ->delimiter(',')
        ->expected(4);
    project_cmd->add_option("-o,--output", project_out, "Output file (default: stdout)");
    project_cmd->callback([&] {
        const akn::Packing packing = akn::load_packing(project_file);
        if (packing.chart != akn::Chart::S3) {
            throw akn::InvalidInputError("project expects an s3-chart packing");
        }
        akn::Point4 pole(pole_coords[0], pole_coords[1], pole_coords[2], pole_coords[3]);
        const double norm = pole.norm();
        if (!(norm > 0.0)) {
            throw akn::InvalidInputError("projection pole must be a nonzero vector");
        }
        pole /= norm;
        akn::Packing projected;
        projected.chart = akn::Chart::R3;
        projected.labels = packing.labels;
        projected.r3_balls.reserve(packing.s3_balls.size());
        for (const akn::SphericalBall& ball : packing.s3_balls) {
            projected.r3_balls.push_back(akn::stereographic_project(pole, ball));
        }
        write_packing_output(projected, project_out);
    });

    // report --max-n N
    CLI::App* report_cmd =
        app.add_subcommand("report", "Convergence table of k(P_n) towards 666/53");
    long long report_max_n = 0;
    report_cmd->add_option("--max-n", report_max_n, "Last layer count")->required();
    report_cmd->callback([&] {
        akn::write_convergence_csv(akn::report_convergence(report_max_n), std::cout);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version are 0, usage errors are 2
    } catch (const akn::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const akn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
