#include "alrates/trace.hpp"

#include <cstdio>
#include <sstream>

namespace alrates {

namespace {

void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::string RunTrace::serialize() const {
    std::string out;
    out += "#alrates-trace v1\n";
    out += "#algorithm=" + algorithm + "\n";
    out += "#config=" + config_json + "\n";
    for (const auto& e : events) {
        out += "r,";
        out += std::to_string(e.step);
        out += ',';
        out += e.action;
        out += ',';
        out += std::to_string(e.index);
        out += ',';
        append_double(out, e.v1);
        out += ',';
        append_double(out, e.v2);
        out += ',';
        append_double(out, e.v3);
        out += '\n';
    }
    out += "#final=" + final_hypothesis + "\n";
    if (!failure.empty()) out += "#failure=" + failure + "\n";
    out += "#labels_used=" + std::to_string(labels_used) + "\n";
    out += "#unlabeled_used=" + std::to_string(unlabeled_used) + "\n";
    return out;
}

}  // namespace alrates
