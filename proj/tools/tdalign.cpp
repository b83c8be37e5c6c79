// Command-line front end: align, evaluate, serve.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <tdalign/tdalign.hpp>

#include "service.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kInvalidInput = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw tdalign::ValidationError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

struct Inputs {
    std::string ref;
    std::string hyp;
    std::string out;
    std::string metrics;
    bool no_strip = false;
    bool no_case_fold = false;
    bool no_segment = false;
};

void add_common(CLI::App* cmd, Inputs& in, tdalign::RunOptions& o) {
    cmd->add_option("--ref", in.ref, "Reference transcript JSON")->required();
    cmd->add_option("--hyp", in.hyp, "Hypothesis transcript JSON")->required();
    cmd->add_option("--out", in.out, "Output path (default: stdout)");
    cmd->add_option("--distance", o.match.max_distance, "Levenshtein threshold for a partial match");
    cmd->add_flag("--no-strip-punct", in.no_strip, "Keep punctuation");
    cmd->add_flag("--no-case-fold", in.no_case_fold, "Compare tokens case-sensitively");
    cmd->add_option("--segment-len", o.segmentation.min_segment_len, "Minimum hypothesis tokens per segment");
    cmd->add_option("--barrier-len", o.segmentation.barrier_len, "Anchors per barrier");
    cmd->add_option("--cell-budget", o.segmentation.cell_budget, "Maximum scoring-matrix cells per segment");
    cmd->add_flag("--no-segment", in.no_segment, "Align the whole input in one scoring matrix");
}

template <typename Body>
int run_guarded(Body&& body) {
    try {
        body();
        return kOk;
    } catch (const tdalign::ParseError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
    } catch (const tdalign::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
    } catch (const tdalign::BudgetError& e) {
        std::cerr << "memory budget: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
    return kInvalidInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-speaker transcript alignment and diarization metrics"};
    app.require_subcommand(1);

    Inputs in;
    tdalign::RunOptions opts;
    int port = 8080;
    std::string host = "127.0.0.1";

    auto* align = app.add_subcommand("align", "Write the alignment matrix as JSON");
    add_common(align, in, opts);
    auto* evaluate = app.add_subcommand("evaluate", "Align, map speakers and compute metrics");
    add_common(evaluate, in, opts);
    evaluate->add_option("--metrics", in.metrics, "Comma-separated subset of wer,wder,tder,df1,der,errors");
    auto* serve = app.add_subcommand("serve", "Run the evaluation service");
    serve->add_option("--port", port, "Listen port");
    serve->add_option("--host", host, "Bind address");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kInvalidInput;
    }

    if (serve->parsed()) {
        httplib::Server server;
        tdalign::service::install(server);
        std::cerr << "listening on " << host << ':' << port << '\n';
        return server.listen(host, port) ? kOk : kInternal;
    }

    return run_guarded([&] {
        opts.normalization.strip_punctuation = !in.no_strip;
        opts.normalization.case_fold = !in.no_case_fold;
        opts.segmentation.enabled = !in.no_segment;
        if (!in.metrics.empty())
            opts.metrics = tdalign::parse_metric_list(in.metrics);

        const auto load = [&](const std::string& path, tdalign::Role role) {
            try {
                return tdalign::parse_transcript(read_file(path), role, opts.normalization);
            } catch (const tdalign::ParseError& e) {
                throw tdalign::ParseError(path + ":" + e.path(), std::string(e.what()).substr(e.path().size() + 2));
            }
        };
        const auto ref = load(in.ref, tdalign::Role::reference);
        const auto hyp = load(in.hyp, tdalign::Role::hypothesis);

        if (align->parsed())
            write_output(in.out, tdalign::dump(tdalign::to_json(tdalign::run_alignment(ref, hyp, opts).alignment)));
        else
            write_output(in.out, tdalign::dump(tdalign::evaluate(ref, hyp, opts)));
    });
}
