// SPDX-License-Identifier: MIT
//
// JSON description files for bundles: a cover block, a list of transitions
// (i, j, expression) on nerve edges, and per-sector metric factor lists.
//
//   {
//     "cover": {"sectors": 3, "width": "4.5", "inner": "0.5", "outer": "1.5",
//               "center": "0"},
//     "transitions": [{"i": 0, "j": 1, "g": "z^2"}, ...],
//     "metric": [[{"h": "z", "k": 1}], [], ...]
//   }
//
// "center" is optional (default 0) and may use the expression constant
// grammar, e.g. "1/2" or "i".  Metric entries contribute |h|^{2k}.

#ifndef CECHSYM_BUNDLE_IO_HPP
#define CECHSYM_BUNDLE_IO_HPP

#include "cechsym/bundle.hpp"

#include <json.hpp>

#include <fstream>
#include <memory>
#include <string>
#include <utility>

namespace cechsym {

struct bundle_package {
    sector_cover cover;
    std::shared_ptr<const nerve> nv;
    line_bundle_data bundle;
    hermitian_metric_data metric;
};

inline bundle_package bundle_from_json(const nlohmann::json& j) {
    try {
        const auto& jc = j.at("cover");
        gaussian_rational center(0);
        if (jc.contains("center")) {
            const rational_function c =
                rational_function::parse(jc.at("center").get<std::string>());
            if (!c.is_constant())
                throw input_error("bundle file: center must be a constant");
            center = c.constant_value();
        }
        sector_cover cover(center, to_double(parse_rational(jc.at("inner").get<std::string>())),
                           to_double(parse_rational(jc.at("outer").get<std::string>())),
                           jc.at("sectors").get<int>(),
                           parse_rational(jc.at("width").get<std::string>()));
        auto nv = std::make_shared<const nerve>(build_nerve(cover, cover.sector_count() - 1));

        std::map<std::pair<int, int>, rational_function> g;
        for (const auto& jt : j.at("transitions")) {
            const int i = jt.at("i").get<int>();
            const int k = jt.at("j").get<int>();
            if (!g.emplace(std::make_pair(i, k),
                           rational_function::parse(jt.at("g").get<std::string>()))
                     .second)
                throw input_error("bundle file: duplicate transition");
        }

        std::vector<std::vector<metric_factor>> rho;
        for (const auto& js : j.at("metric")) {
            std::vector<metric_factor> fs;
            for (const auto& jf : js)
                fs.push_back(metric_factor{
                    rational_function::parse(jf.at("h").get<std::string>()),
                    jf.at("k").get<long>()});
            rho.push_back(std::move(fs));
        }
        if (static_cast<int>(rho.size()) != cover.sector_count())
            throw input_error("bundle file: need one metric entry per sector");

        hermitian_metric_data metric(std::move(rho));
        metric.require_positive_on(cover);
        line_bundle_data bundle(cover, nv, std::move(g));
        return bundle_package{std::move(cover), std::move(nv), std::move(bundle),
                              std::move(metric)};
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("bundle file: ") + e.what());
    }
}

inline bundle_package load_bundle_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open bundle file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("bundle file: ") + e.what());
    }
    return bundle_from_json(j);
}

}  // namespace cechsym

#endif  // CECHSYM_BUNDLE_IO_HPP
