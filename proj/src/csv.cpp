#include "byzsim/run.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

namespace byzsim {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// RFC-4180: quote fields containing separators, quotes, or newlines.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_file(const std::string& text, const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::size_t n = std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
    if (n != text.size()) throw std::runtime_error("short write: " + path);
}

}  // namespace

std::string trace_csv(const std::vector<RunTrace>& traces) {
    if (traces.empty()) throw std::invalid_argument("trace_csv: no traces");
    std::string out =
        "run_id,seed,t,gap,grad_norm_sq,byz_fraction,cost,level,failsafe,dynamic_round\n";
    for (const RunTrace& tr : traces) {
        if (tr.rounds.empty()) throw std::invalid_argument("trace_csv: empty round range");
        for (const RoundRecord& r : tr.rounds) {
            out += std::to_string(tr.run_id);
            out += ',';
            out += std::to_string(tr.seed);
            out += ',';
            out += std::to_string(r.t);
            out += ',';
            out += csv_field(fmt(r.gap));
            out += ',';
            out += csv_field(fmt(r.grad_norm_sq));
            out += ',';
            out += csv_field(fmt(r.byz_fraction));
            out += ',';
            out += std::to_string(r.cost);
            out += ',';
            out += std::to_string(r.level);
            out += ',';
            out += r.failsafe ? '1' : '0';
            out += ',';
            out += r.dynamic_round ? '1' : '0';
            out += '\n';
        }
    }
    return out;
}

std::string summary_csv(const std::vector<RunTrace>& traces) {
    if (traces.empty()) throw std::invalid_argument("summary_csv: no traces");
    std::string out = "run_id,seed,final_gap,min_gap,avg_grad_norm_sq,total_cost,oracle_calls\n";
    for (const RunTrace& tr : traces) {
        out += std::to_string(tr.run_id);
        out += ',';
        out += std::to_string(tr.seed);
        out += ',';
        out += csv_field(fmt(tr.final_gap));
        out += ',';
        out += csv_field(fmt(tr.min_gap));
        out += ',';
        out += csv_field(fmt(tr.avg_grad_norm_sq));
        out += ',';
        out += std::to_string(tr.total_cost);
        out += ',';
        out += std::to_string(tr.oracle_calls);
        out += '\n';
    }
    return out;
}

void export_csv(const std::vector<RunTrace>& traces, const std::string& path) {
    write_file(trace_csv(traces), path);
}

void export_summary_csv(const std::vector<RunTrace>& traces, const std::string& path) {
    write_file(summary_csv(traces), path);
}

}  // namespace byzsim
