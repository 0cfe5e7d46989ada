// Copyright 2026 The qbatch Authors
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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "cli.hpp"

namespace qbatch::cli {
namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string energy_plot_svg(const vqe::VqeResult &result, double reference_energy) {
    const double W = 640, H = 400, left = 70, right = 20, top = 30, bottom = 50;
    const double pw = W - left - right;
    const double ph = H - top - bottom;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    auto include = [&](double e) {
        if (!std::isfinite(e)) {
            return;
        }
        lo = first ? e : std::min(lo, e);
        hi = first ? e : std::max(hi, e);
        first = false;
    };
    for (const auto &r : result.history) {
        include(r.energy - r.stderr_);
        include(r.energy + r.stderr_);
    }
    include(reference_energy);
    if (hi - lo < 1e-9) {
        lo -= 0.5;
        hi += 0.5;
    }
    double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    const std::size_t n = std::max<std::size_t>(result.history.size(), 2);
    auto x = [&](double i) { return left + pw * (i - 1) / static_cast<double>(n - 1); };
    auto y = [&](double e) { return top + ph * (hi - e) / (hi - lo); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
    s += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    s += "<g stroke=\"black\" stroke-width=\"1\">\n";
    s += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(left + pw) + "\" y2=\"" +
         num(top + ph) + "\"/>\n";
    s += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" + num(top + ph) +
         "\"/>\n</g>\n";
    s += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (int k = 0; k <= 4; ++k) {
        double e = lo + (hi - lo) * k / 4.0;
        s += "<text x=\"" + num(left - 6) + "\" y=\"" + num(y(e) + 4) + "\" text-anchor=\"end\">" + num(e) +
             "</text>\n";
    }
    for (std::size_t i = 1; i <= result.history.size(); ++i) {
        if (result.history.size() <= 20 || i % 5 == 0 || i == 1) {
            s += "<text x=\"" + num(x(static_cast<double>(i))) + "\" y=\"" + num(top + ph + 16) +
                 "\" text-anchor=\"middle\">" + std::to_string(i) + "</text>\n";
        }
    }
    s += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(H - 10) + "\" text-anchor=\"middle\">iteration</text>\n";
    s += "<text x=\"16\" y=\"" + num(top + ph / 2) + "\" transform=\"rotate(-90 16 " + num(top + ph / 2) +
         ")\" text-anchor=\"middle\">energy</text>\n</g>\n";
    if (std::isfinite(reference_energy)) {
        s += "<line x1=\"" + num(left) + "\" y1=\"" + num(y(reference_energy)) + "\" x2=\"" + num(left + pw) +
             "\" y2=\"" + num(y(reference_energy)) + "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
    }
    std::string line, best;
    for (std::size_t i = 0; i < result.history.size(); ++i) {
        const auto &r = result.history[i];
        double xi = x(static_cast<double>(i + 1));
        line += num(xi) + "," + num(y(r.energy)) + " ";
        best += num(xi) + "," + num(y(r.best_energy)) + " ";
        if (r.stderr_ > 0.0) {
            s += "<line x1=\"" + num(xi) + "\" y1=\"" + num(y(r.energy - r.stderr_)) + "\" x2=\"" + num(xi) +
                 "\" y2=\"" + num(y(r.energy + r.stderr_)) + "\" stroke=\"steelblue\"/>\n";
        }
        s += "<circle cx=\"" + num(xi) + "\" cy=\"" + num(y(r.energy)) + "\" r=\"3\" fill=\"steelblue\"/>\n";
    }
    s += "<polyline fill=\"none\" stroke=\"steelblue\" points=\"" + line + "\"/>\n";
    s += "<polyline fill=\"none\" stroke=\"darkorange\" stroke-width=\"2\" points=\"" + best + "\"/>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace qbatch::cli
