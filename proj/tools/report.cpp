#include "report.hpp"

#include <algorithm>
#include <ostream>

#include <json.hpp>

#include "bpss/milnor.hpp"
#include "bpss/modcalc.hpp"

namespace bpss::cli {

namespace {

using nlohmann::json;

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void write_table(const Table& t, std::ostream& out) {
    std::vector<size_t> w(t.headers.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = t.headers[i].size();
    for (const auto& r : t.rows)
        for (size_t i = 0; i + 1 < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
        std::string s;
        for (size_t i = 0; i < r.size(); ++i) {
            s += r[i];
            if (i + 1 < r.size()) s += std::string(w[i] - r[i].size() + 2, ' ');
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out << s << '\n';
    };
    line(t.headers);
    for (const auto& r : t.rows) line(r);
}

void write_csv(const Table& t, std::ostream& out) {
    auto line = [&](const std::vector<std::string>& r) {
        for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
        out << '\n';
    };
    line(t.headers);
    for (const auto& r : t.rows) line(r);
}

void write_tabular(const Table& t, const RunConfig& cfg, std::ostream& out) {
    if (cfg.format == Format::Csv)
        write_csv(t, out);
    else
        write_table(t, out);
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

std::string group_name(int free, int torsion) {
    std::vector<std::string> parts;
    if (free) parts.push_back(free == 1 ? "Z" : "Z^" + std::to_string(free));
    if (torsion) parts.push_back(torsion == 1 ? "Z/2" : "(Z/2)^" + std::to_string(torsion));
    return parts.empty() ? "0" : join(parts, " + ");
}

std::vector<int> torsion_orders(int k) { return std::vector<int>(k, 2); }

std::string orders_text(int k) {
    std::vector<std::string> v(k, "2");
    return join(v, " ");
}

}  // namespace

void report_cohomology(const RunConfig& cfg, std::ostream& out) {
    int top = cfg.max_degree >= 0 ? cfg.max_degree : cfg.cutoff;
    auto coh = integral_cohomology(cfg.n, top);
    if (cfg.format == Format::Json) {
        json cells = json::array();
        for (int d = 0; d <= top; ++d) {
            auto it = coh.find(d);
            IntegralCell c = it == coh.end() ? IntegralCell{} : it->second;
            cells.push_back({{"degree", d},
                             {"free", c.free},
                             {"torsion", torsion_orders(c.torsion)},
                             {"free_basis", c.free_basis},
                             {"torsion_basis", c.torsion_basis}});
        }
        out << json{{"n", cfg.n}, {"max_degree", top}, {"degrees", cells}}.dump(2) << '\n';
        return;
    }
    Table t{{"degree", "group", "free", "torsion", "free basis", "torsion basis"}, {}};
    for (int d = 0; d <= top; ++d) {
        auto it = coh.find(d);
        IntegralCell c = it == coh.end() ? IntegralCell{} : it->second;
        t.rows.push_back({std::to_string(d), group_name(c.free, c.torsion), std::to_string(c.free),
                          orders_text(c.torsion), join(c.free_basis, ", "), join(c.torsion_basis, ", ")});
    }
    write_tabular(t, cfg, out);
}

void report_milnor(const RunConfig& cfg, std::ostream& out) {
    int top = std::max(cfg.r, 1);
    MilnorContext ctx(cfg.n, top);
    Table t{{"kind", "j", "argument", "value"}, {}};
    for (int j = 1; j <= top; ++j)
        for (int k = 0; k < j; ++k)
            t.rows.push_back({"alpha", std::to_string(j), std::to_string(k), ctx.alpha(j, k).to_string()});
    for (int j = 0; j <= top; ++j)
        for (int g = 0; g < ctx.bg()->size(); ++g)
            t.rows.push_back({"Q", std::to_string(j), (*ctx.bg())[g].name, ctx.q_of_generator(j, g).to_string()});
    if (cfg.format == Format::Json) {
        json rows = json::array();
        for (const auto& r : t.rows) rows.push_back({{"kind", r[0]}, {"j", std::stoi(r[1])}, {"argument", r[2]}, {"value", r[3]}});
        out << json{{"n", cfg.n}, {"entries", rows}}.dump(2) << '\n';
        return;
    }
    write_tabular(t, cfg, out);
}

void report_families(const RunConfig& cfg, std::ostream& out) {
    int r = cfg.r;
    MilnorContext ctx(cfg.n, std::clamp(r + 1, 1, MilnorContext::kMaxJ));
    std::vector<std::pair<std::string, std::vector<FamilyElement>>> fams;
    if (r >= 2) fams.emplace_back("e", family_e(ctx, r));
    fams.emplace_back("y", family_y(ctx, r));
    fams.emplace_back("z", family_z(ctx, r));
    if (cfg.format == Format::Json) {
        json j{{"n", cfg.n}, {"r", r}};
        for (const auto& [name, f] : fams) {
            json a = json::array();
            for (const auto& e : f) a.push_back({{"I", index_set_name(e.I)}, {"value", e.value.to_string()}});
            j[name] = a;
        }
        out << j.dump(2) << '\n';
        return;
    }
    Table t{{"family", "I", "value"}, {}};
    for (const auto& [name, f] : fams)
        for (const auto& e : f) t.rows.push_back({name + "_" + std::to_string(r), index_set_name(e.I), e.value.to_string()});
    write_tabular(t, cfg, out);
}

void report_page(const EPage& page, const RunConfig& cfg, std::ostream& out) {
    PageSummary sum = page.summary(true);
    if (cfg.format == Format::Json) {
        json cells = json::array();
        for (const auto& [st, g] : sum)
            cells.push_back({{"s", st.first},
                             {"t", st.second},
                             {"free", g.free},
                             {"torsion", torsion_orders(g.torsion)},
                             {"labels", g.labels}});
        out << json{{"n", page.n()}, {"m", page.m()}, {"page", page.page()}, {"cells", cells}}.dump(2) << '\n';
        return;
    }
    Table t{{"s", "t", "group", "free", "torsion", "labels"}, {}};
    for (const auto& [st, g] : sum)
        t.rows.push_back({std::to_string(st.first), std::to_string(st.second), group_name(g.free, g.torsion),
                          std::to_string(g.free), orders_text(g.torsion), join(g.labels, "; ")});
    write_tabular(t, cfg, out);
}

void report_suite(const SuiteResult& res, const RunConfig& cfg, std::ostream& out) {
    if (cfg.format == Format::Json) {
        out << json{{"suite", res.suite},
                    {"checks", res.checks},
                    {"failures", res.failures},
                    {"passed", res.passed()},
                    {"first_failure", res.first_failure},
                    {"notes", res.notes}}
                   .dump(2)
            << '\n';
        return;
    }
    if (cfg.format == Format::Csv) {
        Table t{{"suite", "checks", "failures", "passed", "first_failure"},
                {{res.suite, std::to_string(res.checks), std::to_string(res.failures), res.passed() ? "yes" : "no",
                  res.first_failure}}};
        write_csv(t, out);
        return;
    }
    out << res.suite << ": " << res.checks << " checks, " << res.failures << " failures\n";
    for (const auto& n : res.notes) out << "  " << n << '\n';
    if (res.checks == 0) out << "no checks were run\n";
    if (!res.first_failure.empty()) out << "first failure: " << res.first_failure << '\n';
    out << (res.passed() ? "PASS" : "FAIL") << '\n';
}

}  // namespace bpss::cli
