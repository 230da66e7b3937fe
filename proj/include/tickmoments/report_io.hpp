#pragma once

// Report serialization. JSON carries explicit nulls for undefined statistics; CSV leaves those
// cells empty. Doubles in CSV are printed with 17 significant digits.

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tickmoments/csv_io.hpp"
#include "tickmoments/pipeline.hpp"

namespace tickmoments {

enum class OutputFormat { csv, json };

namespace detail {

inline nlohmann::ordered_json opt_json(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

inline std::string opt_csv(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

inline const char* kind_name(VarKind k) { return k == VarKind::price ? "price" : "return"; }

// Column name and optional value for one interval row, shared by the CSV and JSON writers.
inline std::vector<std::pair<const char*, std::optional<double>>> interval_fields(const IntervalRow& r) {
    using O = std::optional<double>;
    const auto& t = r.trade;
    const auto& p = r.price;
    const auto& s = r.ret;
    return {
        {"a1", p ? O(p->a1) : O()},
        {"a2", p ? O(p->a2) : O()},
        {"sigma2", p ? O(p->sigma2) : O()},
        {"freq_mean", p ? O(p->freq_mean) : O()},
        {"freq_second", p ? O(p->freq_second) : O()},
        {"p22", p ? O(p->p22) : O()},
        {"value_mean", t ? O(t->value_mean) : O()},
        {"value_second", t ? O(t->value_second) : O()},
        {"volume_mean", t ? O(t->volume_mean) : O()},
        {"volume_second", t ? O(t->volume_second) : O()},
        {"value_vol", t ? O(t->value_vol) : O()},
        {"volume_vol", t ? O(t->volume_vol) : O()},
        {"corr_cu", t ? O(t->corr_cu) : O()},
        {"joint_mean", t ? O(t->joint_mean) : O()},
        {"h1", s ? O(s->h1) : O()},
        {"h2m", s ? O(s->h2m) : O()},
        {"v2", s ? O(s->v2) : O()},
        {"past_mean", s ? O(s->past_mean) : O()},
        {"past_second", s ? O(s->past_second) : O()},
        {"phi2", s ? O(s->phi2) : O()},
        {"corr_c_co", s ? O(s->corr_c_co) : O()},
        {"return_freq_mean", s ? O(s->freq_mean) : O()},
        {"return_freq_second", s ? O(s->freq_second) : O()},
    };
}

inline std::vector<std::pair<const char*, std::optional<double>>> window_fields(const SecondaryStats& s) {
    return {
        {"a2_price", s.a2_price},
        {"sigma2_price", s.sigma2_price},
        {"h2_return", s.h2_return},
        {"v2_return", s.v2_return},
        {"value_mean", s.value_mean},
        {"value_second", s.value_second},
        {"volume_mean", s.volume_mean},
        {"volume_second", s.volume_second},
        {"past_mean", s.past_mean},
        {"past_second", s.past_second},
        {"omega_c2", s.omega_c2},
        {"omega_u2", s.omega_u2},
        {"joint_cu2", s.joint_cu2},
        {"corr_cu2", s.corr_cu2},
        {"phi_2sq", s.phi_2sq},
        {"joint_cco2", s.joint_cco2},
        {"corr_cco2", s.corr_cco2},
    };
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const RunReport& rep) {
    using json = nlohmann::ordered_json;
    json j;
    j["grid"] = {{"origin", rep.grid.origin()}, {"width", rep.grid.width()}};

    json intervals = json::array();
    for (const IntervalRow& r : rep.intervals) {
        json row = {{"index", r.index}, {"time", r.time}, {"count", r.count}, {"return_dropped", r.return_dropped}};
        row["degenerate"] = r.price ? json(r.price->degenerate) : json(nullptr);
        for (const auto& [name, v] : detail::interval_fields(r)) row[name] = detail::opt_json(v);
        intervals.push_back(std::move(row));
    }
    j["intervals"] = std::move(intervals);

    json levels = json::array();
    for (const LevelReport& l : rep.levels) {
        json windows = json::array();
        for (const SecondaryWindow& w : l.result.windows) {
            json row = {{"index", w.index}, {"time", w.time}, {"points", w.point_count}, {"partial", w.partial}};
            for (const auto& [name, v] : detail::window_fields(w.stats)) row[name] = detail::opt_json(v);
            windows.push_back(std::move(row));
        }
        levels.push_back({{"level", l.level},
                          {"factor", l.factor},
                          {"grid", {{"origin", l.result.next.grid.origin()}, {"width", l.result.next.grid.width()}}},
                          {"windows", std::move(windows)}});
    }
    j["levels"] = std::move(levels);

    json var = json::array();
    for (const VarRow& v : rep.var) {
        const auto& r = v.report;
        var.push_back({{"index", v.index},
                       {"kind", detail::kind_name(v.kind)},
                       {"alpha", v.alpha},
                       {"var_frequency", r ? json(r->var_frequency) : json(nullptr)},
                       {"var_market", r ? json(r->var_market) : json(nullptr)},
                       {"divergence", r ? json(r->divergence) : json(nullptr)}});
    }
    j["var"] = std::move(var);

    const Diagnostics& d = rep.diagnostics;
    j["diagnostics"] = {{"trades", d.trades},
                        {"intervals", d.intervals},
                        {"empty_intervals", d.empty_intervals},
                        {"degenerate_intervals", d.degenerate_intervals},
                        {"return_observations", d.return_observations},
                        {"dropped_returns", d.dropped_returns},
                        {"dropped_return_fraction", d.dropped_return_fraction}};
    return j;
}

inline void write_intervals_csv(std::ostream& out, const RunReport& rep) {
    out << "index,time,count,return_dropped,degenerate";
    if (!rep.intervals.empty())
        for (const auto& f : detail::interval_fields(rep.intervals.front())) out << ',' << f.first;
    out << '\n';
    for (const IntervalRow& r : rep.intervals) {
        out << r.index << ',' << r.time << ',' << r.count << ',' << r.return_dropped << ','
            << (r.price ? (r.price->degenerate ? "1" : "0") : "");
        for (const auto& f : detail::interval_fields(r)) out << ',' << detail::opt_csv(f.second);
        out << '\n';
    }
}

inline void write_level_csv(std::ostream& out, const LevelReport& l) {
    out << "index,time,points,partial";
    for (const auto& f : detail::window_fields(SecondaryStats{})) out << ',' << f.first;
    out << '\n';
    for (const SecondaryWindow& w : l.result.windows) {
        out << w.index << ',' << w.time << ',' << w.point_count << ',' << (w.partial ? 1 : 0);
        for (const auto& f : detail::window_fields(w.stats)) out << ',' << detail::opt_csv(f.second);
        out << '\n';
    }
}

inline void write_var_csv(std::ostream& out, const RunReport& rep) {
    out << "index,kind,alpha,var_frequency,var_market,divergence\n";
    for (const VarRow& v : rep.var) {
        const auto& r = v.report;
        out << v.index << ',' << detail::kind_name(v.kind) << ',' << format_double(v.alpha) << ','
            << detail::opt_csv(r ? std::optional(r->var_frequency) : std::nullopt) << ','
            << detail::opt_csv(r ? std::optional(r->var_market) : std::nullopt) << ','
            << detail::opt_csv(r ? std::optional(r->divergence) : std::nullopt) << '\n';
    }
}

inline void write_diagnostics_csv(std::ostream& out, const RunReport& rep) {
    const Diagnostics& d = rep.diagnostics;
    out << "key,value\n"
        << "trades," << d.trades << '\n'
        << "intervals," << d.intervals << '\n'
        << "empty_intervals," << d.empty_intervals << '\n'
        << "degenerate_intervals," << d.degenerate_intervals << '\n'
        << "return_observations," << d.return_observations << '\n'
        << "dropped_returns," << d.dropped_returns << '\n'
        << "dropped_return_fraction," << format_double(d.dropped_return_fraction) << '\n';
}

/// Writes report.json, or intervals.csv, level_<j>.csv, var.csv and diagnostics.csv, into `dir`.
/// Returns the paths written.
inline std::vector<std::filesystem::path> write_report(const RunReport& rep, const std::filesystem::path& dir,
                                                       OutputFormat format) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto open = [&](const std::string& name) {
        written.push_back(dir / name);
        std::ofstream f(written.back(), std::ios::binary);
        if (!f) throw DataError("cannot write '" + written.back().string() + "'");
        return f;
    };
    if (format == OutputFormat::json) {
        auto f = open("report.json");
        f << to_json(rep).dump(2) << '\n';
        return written;
    }
    {
        auto f = open("intervals.csv");
        write_intervals_csv(f, rep);
    }
    for (const LevelReport& l : rep.levels) {
        auto f = open("level_" + std::to_string(l.level) + ".csv");
        write_level_csv(f, l);
    }
    {
        auto f = open("var.csv");
        write_var_csv(f, rep);
    }
    {
        auto f = open("diagnostics.csv");
        write_diagnostics_csv(f, rep);
    }
    return written;
}

}  // namespace tickmoments
