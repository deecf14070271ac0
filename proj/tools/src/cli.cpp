#include "cli.hpp"

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "service.hpp"
#include "vitalscan/error.hpp"
#include "vitalscan/identity.hpp"
#include "vitalscan/pipeline.hpp"
#include "vitalscan/report.hpp"
#include "vitalscan/synth.hpp"

namespace vitalscan {
namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& dest, const std::string& content) {
    if (dest == "-") {
        std::cout << content << std::flush;
        return;
    }
    std::ofstream out(dest, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + dest);
    out << content;
    if (!out.flush()) throw std::runtime_error("cannot write file: " + dest);
}

double parse_double_or(const std::string& s, const char* complaint) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw std::invalid_argument(complaint);
    return v;
}

void apply_band(const std::string& band, PosConfig& pos) {
    constexpr const char* kComplaint = "--band must be lo:hi in Hz with 0 < lo < hi";
    const auto colon = band.find(':');
    if (colon == std::string::npos) throw std::invalid_argument(kComplaint);
    const double lo = parse_double_or(band.substr(0, colon), kComplaint);
    const double hi = parse_double_or(band.substr(colon + 1), kComplaint);
    if (!(lo > 0.0 && lo < hi)) throw std::invalid_argument(kComplaint);
    pos.band_lo_hz = lo;
    pos.band_hi_hz = hi;
}

// Inline JSON (starts with '[') or a path to a JSON file; {"probe": [...]}
// wrappers are unwrapped.
std::vector<double> parse_vector_arg(const std::string& arg) {
    std::string text = arg;
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || arg[first] != '[') text = read_file(arg);
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_object() && doc.contains("probe")) doc = doc["probe"];
    if (!doc.is_array() || doc.empty())
        throw std::invalid_argument("vector must be a non-empty JSON array of numbers");
    std::vector<double> out;
    out.reserve(doc.size());
    for (const auto& x : doc) {
        if (!x.is_number())
            throw std::invalid_argument("vector must be a non-empty JSON array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::string gallery_path_or_env(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("VITALS_GALLERY"); env != nullptr && *env != '\0')
        return env;
    throw std::invalid_argument("no gallery given: pass --gallery or set VITALS_GALLERY");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"pulse extraction and vitals from facial RGB traces, plus gallery identification"};
    app.require_subcommand(1);
    app.set_config("--config", "", "config file with flag-equivalent keys");

    auto* compute = app.add_subcommand("compute", "full vitals report from a trace CSV");
    std::string compute_trace;
    std::string compute_out = "-";
    std::optional<double> compute_fs;
    std::optional<double> compute_window;
    std::string compute_band;
    compute->add_option("--trace", compute_trace, "input trace CSV")->required();
    compute->add_option("--out", compute_out, "output path, - for stdout");
    compute->add_option("--fs", compute_fs, "resample onto this uniform rate (Hz)");
    compute->add_option("--window", compute_window, "POS window length (s)");
    compute->add_option("--band", compute_band, "pulse band lo:hi (Hz)");
    compute->callback([&] {
        TraceOptions opts;
        if (compute_fs) {
            if (!(*compute_fs > 0.0)) throw std::invalid_argument("--fs must be > 0");
            opts.fs_target = *compute_fs;
        }
        if (compute_window) {
            if (!(*compute_window > 0.0)) throw std::invalid_argument("--window must be > 0");
            opts.pos.window_seconds = *compute_window;
        }
        if (!compute_band.empty()) apply_band(compute_band, opts.pos);
        const VitalsReport report = vitals_from_document(read_file(compute_trace), opts);
        write_output(compute_out, canonical_report_json(report));
    });

    auto* pos = app.add_subcommand("pos", "pulse waveform only, as CSV");
    std::string pos_trace;
    std::string pos_out;
    std::optional<double> pos_fs;
    std::optional<double> pos_window;
    std::string pos_band;
    pos->add_option("--trace", pos_trace, "input trace CSV")->required();
    pos->add_option("--out", pos_out, "output path, - for stdout")->required();
    pos->add_option("--fs", pos_fs, "resample onto this uniform rate (Hz)");
    pos->add_option("--window", pos_window, "POS window length (s)");
    pos->add_option("--band", pos_band, "pulse band lo:hi (Hz)");
    pos->callback([&] {
        TraceOptions opts;
        if (pos_fs) {
            if (!(*pos_fs > 0.0)) throw std::invalid_argument("--fs must be > 0");
            opts.fs_target = *pos_fs;
        }
        if (pos_window) {
            if (!(*pos_window > 0.0)) throw std::invalid_argument("--window must be > 0");
            opts.pos.window_seconds = *pos_window;
        }
        if (!pos_band.empty()) apply_band(pos_band, opts.pos);
        const PulseSignal pulse = pulse_from_document(read_file(pos_trace), opts);
        write_output(pos_out, serialize_pulse(pulse));
    });

    auto* synth = app.add_subcommand("synth", "synthetic trace with known ground truth");
    double synth_hr = 0.0;
    double synth_duration = 0.0;
    double synth_fs = 0.0;
    double synth_noise = 0.0;
    std::uint64_t synth_seed = 1;
    std::string synth_out;
    synth->add_option("--hr", synth_hr, "heart rate (bpm)")->required();
    synth->add_option("--duration", synth_duration, "trace length (s)")->required();
    synth->add_option("--fs", synth_fs, "sampling rate (Hz)")->required();
    synth->add_option("--noise", synth_noise, "noise sigma as fraction of baseline");
    synth->add_option("--seed", synth_seed, "RNG seed");
    synth->add_option("--out", synth_out, "output CSV path, - for stdout")->required();
    synth->callback([&] {
        const auto [trace, truth] =
            synth_trace(synth_hr, synth_duration, synth_fs, 0.01, synth_noise, synth_seed);
        write_output(synth_out, serialize_trace(trace));
        if (synth_out != "-")
            write_output(synth_out + ".truth.json", canonical_ground_truth_json(truth));
    });

    auto* enroll = app.add_subcommand("enroll", "add an embedding to a gallery file");
    std::string enroll_gallery;
    std::string enroll_subject;
    std::string enroll_vector;
    std::size_t enroll_k = 5;
    double enroll_tau = 1.0;
    enroll->add_option("--gallery", enroll_gallery, "gallery file (or VITALS_GALLERY)");
    enroll->add_option("--subject", enroll_subject, "subject id")->required();
    enroll->add_option("--vector", enroll_vector, "JSON array or path to one")->required();
    enroll->add_option("--k", enroll_k, "neighbor count when creating a new gallery");
    enroll->add_option("--tau", enroll_tau, "rejection threshold when creating a new gallery");
    enroll->callback([&] {
        const std::string path = gallery_path_or_env(enroll_gallery);
        const std::vector<double> vec = parse_vector_arg(enroll_vector);
        EmbeddingGallery gallery =
            std::filesystem::exists(path)
                ? load_gallery(path)
                : EmbeddingGallery(vec.size(), GalleryParams{enroll_k, enroll_tau});
        gallery.enroll(enroll_subject, vec);
        save_gallery(gallery, path);
    });

    auto* identify = app.add_subcommand("identify", "match a probe against a gallery");
    std::string identify_gallery;
    std::string identify_probe;
    std::string identify_out = "-";
    identify->add_option("--gallery", identify_gallery, "gallery file (or VITALS_GALLERY)");
    identify->add_option("--probe", identify_probe, "JSON array or path to one")->required();
    identify->add_option("--out", identify_out, "output path, - for stdout");
    identify->callback([&] {
        const EmbeddingGallery gallery = load_gallery(gallery_path_or_env(identify_gallery));
        const IdentityMatch match = gallery.identify(parse_vector_arg(identify_probe));
        write_output(identify_out, canonical_match_json(match));
    });

    auto* serve = app.add_subcommand("serve", "batch HTTP service");
    std::string serve_host = "127.0.0.1";
    int serve_port = 8080;
    std::string serve_gallery;
    std::optional<double> serve_fs;
    std::optional<double> serve_window;
    std::string serve_band;
    serve->add_option("--host", serve_host, "bind address");
    serve->add_option("--port", serve_port, "bind port");
    serve->add_option("--gallery", serve_gallery, "gallery file (or VITALS_GALLERY)");
    serve->add_option("--fs", serve_fs, "default resample rate (Hz)");
    serve->add_option("--window", serve_window, "default POS window length (s)");
    serve->add_option("--band", serve_band, "default pulse band lo:hi (Hz)");
    std::optional<int> serve_rc;
    serve->callback([&] {
        ServiceConfig config;
        if (!serve_gallery.empty())
            config.gallery_path = serve_gallery;
        else if (const char* env = std::getenv("VITALS_GALLERY"); env != nullptr && *env != '\0')
            config.gallery_path = env;
        if (serve_fs) config.trace.fs_target = *serve_fs;
        if (serve_window) config.trace.pos.window_seconds = *serve_window;
        if (!serve_band.empty()) apply_band(serve_band, config.trace.pos);
        serve_rc = serve_batch(serve_host, serve_port, config);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return serve_rc.value_or(0);
}

}  // namespace vitalscan
