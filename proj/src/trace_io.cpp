#include "hetnet/trace_io.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace hetnet {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& cols) {
    std::string line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) line += ',';
        line += cols[i];
    }
    return line;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// Absent links report V = +inf, which JSON cannot carry.
json finite_or_null(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::isfinite(v(i))) arr.push_back(v(i));
        else arr.push_back(nullptr);
    }
    return arr;
}

}  // namespace

void write_trace_csv(std::ostream& out, const Trace& trace) {
    const auto n = trace.states.empty() ? 0 : trace.states.front().p1.size();
    std::vector<std::string> header = {"k"};
    for (Eigen::Index i = 1; i <= n; ++i) {
        const std::string p = "ue" + std::to_string(i) + "_";
        for (const char* f : {"p1", "p2", "rate1", "rate2", "state"}) header.push_back(p + f);
    }
    header.push_back("eta_n");
    out << join(header) << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t k = 0; k < trace.states.size(); ++k) {
        const auto& st = trace.states[k];
        const auto& rep = trace.reports[k];
        out << k;
        for (Eigen::Index i = 0; i < n; ++i) {
            out << ',' << st.p1(i) << ',' << st.p2(i) << ',' << st.rate1(i) << ',' << st.rate2(i) << ','
                << to_string(rep.ue_states[i]);
        }
        out << ',' << rep.eta_n << '\n';
    }
}

json metrics_to_json(const Trace& trace) {
    return json{{"verdict", to_string(trace.verdict.kind)},
                {"converged_at", trace.converged() ? json(trace.verdict.iteration) : json(nullptr)},
                {"oscillation_period",
                 trace.verdict.kind == Verdict::Kind::Oscillating ? json(trace.verdict.period) : json(nullptr)},
                {"eta_n_final", trace.metrics.eta_n_final},
                {"eta_n_normalized", trace.metrics.eta_n_normalized},
                {"avg_total_power", trace.metrics.avg_total_power},
                {"iterations_run", trace.metrics.iterations_run}};
}

json trace_to_json(const Trace& trace) {
    json iterations = json::array();
    for (std::size_t k = 0; k < trace.states.size(); ++k) {
        const auto& st = trace.states[k];
        const auto& rep = trace.reports[k];
        json states = json::array();
        for (auto s : rep.ue_states) states.push_back(to_string(s));
        json v = json::object();
        for (const auto& [id, value] : rep.v) v[std::to_string(id)] = value;
        iterations.push_back({{"k", k},
                              {"p1", to_std(st.p1)},
                              {"p2", to_std(st.p2)},
                              {"e1", to_std(st.e1)},
                              {"e2", to_std(st.e2)},
                              {"sinr1", to_std(st.sinr1)},
                              {"sinr2", to_std(st.sinr2)},
                              {"rate1", to_std(st.rate1)},
                              {"rate2", to_std(st.rate2)},
                              {"v1", finite_or_null(rep.v1)},
                              {"v2", finite_or_null(rep.v2)},
                              {"v_poa", v},
                              {"gamma_relay_sum", rep.gamma_relay_sum},
                              {"states", states},
                              {"eta_n", rep.eta_n}});
    }
    return json{{"metrics", metrics_to_json(trace)}, {"iterations", iterations}};
}

void write_trial_csv(std::ostream& out, const std::vector<TrialRow>& rows) {
    out << join(trial_csv_header()) << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& r : rows) {
        out << r.preset << ',' << r.sweep_var << ',' << r.sweep_value << ',' << to_string(r.policy) << ','
            << r.trial << ',' << r.eta_n_normalized << ',' << r.avg_total_power << ',' << (r.converged ? 1 : 0)
            << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << join(summary_csv_header()) << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& r : rows) {
        out << r.preset << ',' << r.sweep_var << ',' << r.sweep_value << ',' << to_string(r.policy) << ','
            << r.trials << ',' << r.eta_n_normalized_mean << ',' << r.eta_n_normalized_se << ','
            << r.avg_total_power_mean << ',' << r.avg_total_power_se << ',' << r.convergence_pct << '\n';
    }
}

std::vector<TrialRow> read_trial_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || split(line) != trial_csv_header())
        throw std::invalid_argument("trial CSV: unexpected header");
    std::vector<TrialRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != trial_csv_header().size()) throw std::invalid_argument("trial CSV: wrong field count");
        TrialRow r;
        try {
            r.preset = f[0];
            r.sweep_var = f[1];
            r.sweep_value = f[2];
            r.policy = policy_from_string(f[3]);
            r.trial = std::stoi(f[4]);
            r.eta_n_normalized = std::stod(f[5]);
            r.avg_total_power = std::stod(f[6]);
            r.converged = std::stoi(f[7]) != 0;
        } catch (const std::logic_error& e) {
            throw std::invalid_argument(std::string("trial CSV: bad field: ") + e.what());
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace hetnet
