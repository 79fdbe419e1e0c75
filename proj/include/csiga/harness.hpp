// SPDX-License-Identifier: Apache-2.0
//
// csiga: cross-splitting information geometry detectors for MU-MIMO uplink
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "csiga/baselines.hpp"
#include "csiga/channel.hpp"
#include "csiga/cs_iga.hpp"
#include "csiga/ncs_iga.hpp"
#include "csiga/version.hpp"

// Monte Carlo experiment driver: BER/SER/MSE sweeps over SNR recorded per
// iteration, and per-iteration timing scans over the user count. Trials
// run in parallel over fixed-size chunks with counter-derived RNG
// substreams; aggregation merges chunk partials in chunk order, so the
// emitted tables are byte-identical for any thread count.

namespace csiga::harness {

enum class Detector { cs_iga, ncs_iga, lmmse, mf, exact };

inline Detector detector_from_string(const std::string& name) {
    if (name == "cs-iga") return Detector::cs_iga;
    if (name == "ncs-iga") return Detector::ncs_iga;
    if (name == "lmmse") return Detector::lmmse;
    if (name == "mf") return Detector::mf;
    if (name == "exact") return Detector::exact;
    throw std::invalid_argument("unknown detector '" + name + "'");
}

inline const char* to_string(Detector d) {
    switch (d) {
        case Detector::cs_iga: return "cs-iga";
        case Detector::ncs_iga: return "ncs-iga";
        case Detector::lmmse: return "lmmse";
        case Detector::mf: return "mf";
        case Detector::exact: return "exact";
    }
    return "?";
}

struct ExperimentConfig {
    std::string detector = "cs-iga";
    int antennas = 64;  // M
    int users = 16;     // N
    int mod_order = 4;  // L
    std::vector<double> snr_db = {0.0, 2.0, 4.0, 6.0, 8.0, 10.0};
    int iterations = 10;                  // T
    std::optional<double> damping;        // defaults to 0.7 (cs) / 0.5 (ncs)
    int trials = 100;
    std::uint64_t seed = 1;
    cs::InitMode init = cs::InitMode::zero;
    std::optional<double> cond_max;       // max condition number of HᴴH
    std::string out;                      // output path ("" = caller handles I/O)
    std::string format = "csv";           // csv | json
    std::vector<int> users_list;          // timing-scan N values
    int threads = 0;                      // 0 = env CSIGA_THREADS or hardware default

    double effective_damping() const {
        if (damping) return *damping;
        return detector == "ncs-iga" ? 0.5 : 0.7;
    }
};

/// Aggregates for one (snr, iteration) cell of a sweep.
struct RunRecord {
    std::string detector;
    int antennas = 0;
    int users = 0;
    int mod_order = 0;
    double snr_db = 0.0;
    int iter = 0;
    long trials = 0;
    long bit_errors = 0;
    long bits = 0;
    double ber = 0.0;
    double ser = 0.0;
    double mse = 0.0;
    double fp_resid = std::numeric_limits<double>::quiet_NaN();
    double iter_time_us = 0.0;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based substream seed: depends only on (seed, snr index, trial),
/// never on scheduling.
inline std::uint64_t substream_seed(std::uint64_t seed, int snr_index, long trial) {
    std::uint64_t h = splitmix64(seed ^ 0x632a9eULL);
    h = splitmix64(h ^ static_cast<std::uint64_t>(snr_index + 1));
    h = splitmix64(h ^ static_cast<std::uint64_t>(trial + 1));
    return h;
}

inline double condition_number(const cmat& h) {
    Eigen::SelfAdjointEigenSolver<cmat> es(h.adjoint() * h);
    const rvec ev = es.eigenvalues();
    const double lo = ev.minCoeff();
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return ev.maxCoeff() / lo;
}

inline constexpr int condition_filter_retries = 200;

inline cmat draw_channel(const ExperimentConfig& cfg, rng_engine& rng) {
    if (!cfg.cond_max) return generate_channel(cfg.antennas, cfg.users, rng);
    for (int attempt = 0; attempt < condition_filter_retries; ++attempt) {
        cmat h = generate_channel(cfg.antennas, cfg.users, rng);
        if (condition_number(h) <= *cfg.cond_max) return h;
    }
    throw std::runtime_error("condition-number filter exhausted its redraw budget");
}

struct CellAccumulator {
    long bit_errors = 0;
    long sym_errors = 0;
    double mse_sum = 0.0;
    double fp_sum = 0.0;

    void merge(const CellAccumulator& other) {
        bit_errors += other.bit_errors;
        sym_errors += other.sym_errors;
        mse_sum += other.mse_sum;
        fp_sum += other.fp_sum;
    }
};

inline void score_decisions(const std::vector<int>& sent, const std::vector<int>& decided,
                            const Constellation& cons, CellAccumulator& cell) {
    for (std::size_t k = 0; k < sent.size(); ++k) {
        if (sent[k] != decided[k]) {
            cell.sym_errors += 1;
            cell.bit_errors += cons.bit_errors(sent[k], decided[k]);
        }
    }
}

inline std::vector<int> nearest_decisions(const cvec& estimate, const Constellation& cons) {
    std::vector<int> out(static_cast<std::size_t>(estimate.size()));
    for (int k = 0; k < estimate.size(); ++k)
        out[static_cast<std::size_t>(k)] = cons.nearest(estimate[k]);
    return out;
}

/// One Monte Carlo trial; cells has one entry per recorded iteration.
inline void run_trial(const ExperimentConfig& cfg, Detector det, const Constellation& cons,
                      int snr_index, double snr, long trial,
                      std::vector<CellAccumulator>& cells) {
    rng_engine rng(substream_seed(cfg.seed, snr_index, trial));
    const double sigma2 = snr_to_sigma2(snr);
    const cmat h = draw_channel(cfg, rng);

    std::uniform_int_distribution<int> pick(0, cons.order - 1);
    std::vector<int> sent(static_cast<std::size_t>(cfg.users));
    for (auto& s : sent) s = pick(rng);
    const TransmitResult tx = transmit(sent, h, sigma2, cons, rng);
    const DetectionProblem problem{h, tx.y, sigma2, cons};
    const int n = cfg.users;

    switch (det) {
        case Detector::lmmse: {
            const auto res = baselines::lmmse(problem);
            score_decisions(sent, nearest_decisions(res.mu, cons), cons, cells[0]);
            cells[0].mse_sum += (res.mu - tx.x).squaredNorm() / n;
            break;
        }
        case Detector::mf: {
            // per-user matched-filter estimate hᴴy / ||h||^2 for demapping
            const cvec raw = baselines::matched_filter(problem);
            cvec est(n);
            for (int k = 0; k < n; ++k)
                est[k] = raw[k] * problem.sigma2 / h.col(k).squaredNorm();
            score_decisions(sent, nearest_decisions(est, cons), cons, cells[0]);
            cells[0].mse_sum += (est - tx.x).squaredNorm() / n;
            break;
        }
        case Detector::exact: {
            const auto res = baselines::exact_marginals(problem);
            std::vector<int> hard(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) {
                int best = 0;
                for (int l = 1; l < cons.order; ++l)
                    if (res.eta_exact(k, l) > res.eta_exact(k, best)) best = l;
                hard[static_cast<std::size_t>(k)] = best;
            }
            score_decisions(sent, hard, cons, cells[0]);
            cells[0].mse_sum += (res.mmse_mean - tx.x).squaredNorm() / n;
            break;
        }
        case Detector::cs_iga: {
            const cvec mu_lmmse = baselines::lmmse(problem).mu;
            const SplitComponents split = cross_split(precompute(problem, GramVariant::linear));
            cs::AuxiliaryState state = cs::make_state(n, cfg.init);
            cs::ProjectionRow scratch;
            cs::Beliefs beliefs(n);
            cvec mu;
            rvec sigma;
            for (int t = 0; t < cfg.iterations; ++t) {
                cs::step(state, split, scratch, beliefs, cfg.effective_damping());
                cs::objective_moments(state, split, mu, sigma);
                score_decisions(sent, nearest_decisions(mu, cons), cons, cells[t]);
                cells[t].mse_sum += (mu - tx.x).squaredNorm() / n;
                cells[t].fp_sum += (mu - mu_lmmse).cwiseAbs().maxCoeff();
            }
            break;
        }
        case Detector::ncs_iga: {
            const SplitComponents split =
                cross_split(precompute(problem, GramVariant::nonlinear));
            ncs::Config det_cfg;
            det_cfg.damping = cfg.effective_damping();
            det_cfg.init = cfg.init;
            ncs::SoftState state = ncs::make_state(n, cfg.init);
            cs::ProjectionRow scratch;
            cs::Beliefs beliefs(n);
            for (int t = 0; t < cfg.iterations; ++t) {
                ncs::step(state, split, cons, det_cfg, scratch, beliefs);
                score_decisions(sent, ncs::hard_decisions(state.posterior), cons, cells[t]);
                cells[t].mse_sum += (state.posterior.mu_tilde - tx.x).squaredNorm() / n;
            }
            break;
        }
    }
}

inline int resolve_threads(int configured) {
    if (configured > 0) return configured;
    if (const char* env = std::getenv("CSIGA_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

inline constexpr long sweep_chunk_trials = 32;

}  // namespace detail

inline void validate(const ExperimentConfig& cfg) {
    detector_from_string(cfg.detector);
    if (cfg.antennas < 1 || cfg.users < 1) throw std::invalid_argument("dimensions must be positive");
    if (cfg.trials < 1) throw std::invalid_argument("need at least one trial");
    if (cfg.iterations < 1) throw std::invalid_argument("need at least one iteration");
    if (cfg.snr_db.empty()) throw std::invalid_argument("need at least one SNR point");
    if (cfg.format != "csv" && cfg.format != "json")
        throw std::invalid_argument("format must be csv or json");
    make_constellation(cfg.mod_order);
    if (cfg.detector == "exact") {
        double count = 1.0;
        for (int k = 0; k < cfg.users; ++k) count *= cfg.mod_order;
        if (count > static_cast<double>(baselines::exact_hypothesis_limit))
            throw std::invalid_argument("exact detector exceeds the hypothesis limit");
    }
}

/// Runs the configured sweep and returns one record per (snr, iteration).
/// Iterative detectors record every iteration 1..T; direct detectors
/// record a single row with iter = 0. Deterministic in (config, seed)
/// for any thread count.
inline std::vector<RunRecord> run_sweep(const ExperimentConfig& cfg) {
    validate(cfg);
    const Detector det = detector_from_string(cfg.detector);
    const Constellation cons = make_constellation(cfg.mod_order);
    const bool iterative = det == Detector::cs_iga || det == Detector::ncs_iga;
    const int slots = iterative ? cfg.iterations : 1;
    const int n_snr = static_cast<int>(cfg.snr_db.size());

    const long chunks =
        (cfg.trials + detail::sweep_chunk_trials - 1) / detail::sweep_chunk_trials;
    std::vector<std::vector<detail::CellAccumulator>> partials(
        static_cast<std::size_t>(chunks),
        std::vector<detail::CellAccumulator>(static_cast<std::size_t>(n_snr * slots)));

    std::atomic<long> next_chunk{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        std::vector<detail::CellAccumulator> cells(static_cast<std::size_t>(slots));
        try {
            for (;;) {
                const long c = next_chunk.fetch_add(1);
                if (c >= chunks) return;
                auto& out = partials[static_cast<std::size_t>(c)];
                const long first = c * detail::sweep_chunk_trials;
                const long last = std::min<long>(first + detail::sweep_chunk_trials, cfg.trials);
                for (long trial = first; trial < last; ++trial) {
                    for (int s = 0; s < n_snr; ++s) {
                        for (auto& cell : cells) cell = detail::CellAccumulator{};
                        detail::run_trial(cfg, det, cons, s, cfg.snr_db[static_cast<std::size_t>(s)],
                                          trial, cells);
                        for (int t = 0; t < slots; ++t)
                            out[static_cast<std::size_t>(s * slots + t)].merge(
                                cells[static_cast<std::size_t>(t)]);
                    }
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next_chunk.store(chunks);
        }
    };

    const int threads = std::min<long>(detail::resolve_threads(cfg.threads), chunks);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // chunk-ordered merge keeps floating-point sums schedule-independent
    std::vector<detail::CellAccumulator> total(static_cast<std::size_t>(n_snr * slots));
    for (long c = 0; c < chunks; ++c)
        for (std::size_t i = 0; i < total.size(); ++i)
            total[i].merge(partials[static_cast<std::size_t>(c)][i]);

    std::vector<RunRecord> rows;
    rows.reserve(static_cast<std::size_t>(n_snr * slots));
    const long symbols = static_cast<long>(cfg.trials) * cfg.users;
    const long bits = symbols * cons.bits_per_symbol;
    for (int s = 0; s < n_snr; ++s) {
        for (int t = 0; t < slots; ++t) {
            const auto& cell = total[static_cast<std::size_t>(s * slots + t)];
            RunRecord r;
            r.detector = cfg.detector;
            r.antennas = cfg.antennas;
            r.users = cfg.users;
            r.mod_order = cfg.mod_order;
            r.snr_db = cfg.snr_db[static_cast<std::size_t>(s)];
            r.iter = iterative ? t + 1 : 0;
            r.trials = cfg.trials;
            r.bit_errors = cell.bit_errors;
            r.bits = bits;
            r.ber = static_cast<double>(cell.bit_errors) / static_cast<double>(bits);
            r.ser = static_cast<double>(cell.sym_errors) / static_cast<double>(symbols);
            r.mse = cell.mse_sum / static_cast<double>(cfg.trials);
            r.fp_resid = det == Detector::cs_iga
                             ? cell.fp_sum / static_cast<double>(cfg.trials)
                             : std::numeric_limits<double>::quiet_NaN();
            r.iter_time_us = 0.0;  // sweeps stay byte-reproducible; use the timing scan for clocks
            r.seed = cfg.seed;
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

// ---------------------------------------------------------------------
// timing scan

struct TimingRecord {
    std::string detector;
    int antennas = 0;
    int users = 0;
    int mod_order = 0;
    int iterations = 0;
    int repeats = 0;
    double median_iter_time_us = 0.0;
};

struct TimingResult {
    std::vector<TimingRecord> rows;
    double loglog_slope = 0.0;  // fitted d log(time) / d log(N)
};

/// Median per-iteration wall time for each N in users_list (precompute
/// and splitting excluded), plus the fitted log-log slope against N.
inline TimingResult timing_scan(const ExperimentConfig& cfg) {
    const Detector det = detector_from_string(cfg.detector);
    if (det != Detector::cs_iga && det != Detector::ncs_iga)
        throw std::invalid_argument("timing scan requires an iterative detector");
    std::vector<int> n_list = cfg.users_list.empty() ? std::vector<int>{cfg.users} : cfg.users_list;
    if (!std::is_sorted(n_list.begin(), n_list.end()))
        throw std::invalid_argument("timing scan expects an ascending user-count list");
    const Constellation cons = make_constellation(cfg.mod_order);
    const double snr = cfg.snr_db.empty() ? 10.0 : cfg.snr_db.front();
    const double sigma2 = snr_to_sigma2(snr);

    TimingResult result;
    for (int n : n_list) {
        rng_engine rng(detail::substream_seed(cfg.seed, 0, n));
        const cmat h = generate_channel(cfg.antennas, n, rng);
        std::uniform_int_distribution<int> pick(0, cons.order - 1);
        std::vector<int> sent(static_cast<std::size_t>(n));
        for (auto& s : sent) s = pick(rng);
        const TransmitResult tx = transmit(sent, h, sigma2, cons, rng);
        const DetectionProblem problem{h, tx.y, sigma2, cons};
        const GramVariant variant =
            det == Detector::cs_iga ? GramVariant::linear : GramVariant::nonlinear;
        const SplitComponents split = cross_split(precompute(problem, variant));

        std::vector<double> samples;
        samples.reserve(static_cast<std::size_t>(cfg.trials));
        cs::ProjectionRow scratch;
        cs::Beliefs beliefs(n);
        ncs::Config ncs_cfg;
        ncs_cfg.damping = cfg.effective_damping();
        for (int rep = 0; rep < cfg.trials; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            if (det == Detector::cs_iga) {
                cs::AuxiliaryState state = cs::make_state(n, cfg.init);
                for (int t = 0; t < cfg.iterations; ++t)
                    cs::step(state, split, scratch, beliefs, cfg.effective_damping());
            } else {
                ncs::SoftState state = ncs::make_state(n, cfg.init);
                for (int t = 0; t < cfg.iterations; ++t)
                    ncs::step(state, split, cons, ncs_cfg, scratch, beliefs);
            }
            const auto stop = std::chrono::steady_clock::now();
            const double us =
                std::chrono::duration<double, std::micro>(stop - start).count() / cfg.iterations;
            samples.push_back(us);
        }
        std::sort(samples.begin(), samples.end());
        const std::size_t mid = samples.size() / 2;
        const double median = samples.size() % 2 == 1
                                  ? samples[mid]
                                  : 0.5 * (samples[mid - 1] + samples[mid]);
        TimingRecord row;
        row.detector = cfg.detector;
        row.antennas = cfg.antennas;
        row.users = n;
        row.mod_order = cfg.mod_order;
        row.iterations = cfg.iterations;
        row.repeats = cfg.trials;
        row.median_iter_time_us = median;
        result.rows.push_back(std::move(row));
    }

    if (result.rows.size() >= 2) {
        // least-squares slope of log(time) against log(N)
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const double count = static_cast<double>(result.rows.size());
        for (const auto& row : result.rows) {
            const double x = std::log(static_cast<double>(row.users));
            const double y = std::log(row.median_iter_time_us);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        result.loglog_slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    }
    return result;
}

// ---------------------------------------------------------------------
// serialization

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace detail

inline const char* sweep_csv_header() {
    return "detector,M,N,L,snr_db,iter,trials,bit_errors,bits,ber,ser,mse,fp_resid,iter_time_us,seed";
}

inline std::string to_csv(const std::vector<RunRecord>& rows) {
    std::ostringstream out;
    out << sweep_csv_header() << '\n';
    for (const auto& r : rows) {
        out << r.detector << ',' << r.antennas << ',' << r.users << ',' << r.mod_order << ','
            << detail::format_double(r.snr_db) << ',' << r.iter << ',' << r.trials << ','
            << r.bit_errors << ',' << r.bits << ',' << detail::format_double(r.ber) << ','
            << detail::format_double(r.ser) << ',' << detail::format_double(r.mse) << ','
            << detail::format_double(r.fp_resid) << ','
            << detail::format_double(r.iter_time_us) << ',' << r.seed << '\n';
    }
    return out.str();
}

inline nlohmann::json to_json(const std::vector<RunRecord>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"detector", r.detector},
                       {"M", r.antennas},
                       {"N", r.users},
                       {"L", r.mod_order},
                       {"snr_db", r.snr_db},
                       {"iter", r.iter},
                       {"trials", r.trials},
                       {"bit_errors", r.bit_errors},
                       {"bits", r.bits},
                       {"ber", r.ber},
                       {"ser", r.ser},
                       {"mse", r.mse},
                       {"fp_resid", r.fp_resid},
                       {"iter_time_us", r.iter_time_us},
                       {"seed", r.seed}});
    }
    return arr;
}

inline std::string to_csv(const TimingResult& result) {
    std::ostringstream out;
    out << "detector,M,N,L,T,repeats,median_iter_time_us\n";
    for (const auto& r : result.rows) {
        out << r.detector << ',' << r.antennas << ',' << r.users << ',' << r.mod_order << ','
            << r.iterations << ',' << r.repeats << ','
            << detail::format_double(r.median_iter_time_us) << '\n';
    }
    return out.str();
}

inline std::string config_hash(const ExperimentConfig& cfg) {
    std::ostringstream canon;
    canon << cfg.detector << '|' << cfg.antennas << '|' << cfg.users << '|' << cfg.mod_order
          << '|' << cfg.iterations << '|' << cfg.effective_damping() << '|' << cfg.trials << '|'
          << cfg.seed << '|' << (cfg.init == cs::InitMode::paper ? "paper" : "zero") << '|'
          << (cfg.cond_max ? detail::format_double(*cfg.cond_max) : "none");
    for (double s : cfg.snr_db) canon << '|' << detail::format_double(s);
    const std::string data = canon.str();
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline nlohmann::json manifest_json(const ExperimentConfig& cfg) {
    nlohmann::json snr = nlohmann::json::array();
    for (double s : cfg.snr_db) snr.push_back(s);
    nlohmann::json users_list = nlohmann::json::array();
    for (int n : cfg.users_list) users_list.push_back(n);
    nlohmann::json m{{"version", csiga::version},
#ifdef CSIGA_GIT_SHA
                     {"git_commit", CSIGA_GIT_SHA},
#else
                     {"git_commit", "unknown"},
#endif
                     {"config_hash", config_hash(cfg)},
                     {"config",
                      {{"detector", cfg.detector},
                       {"antennas", cfg.antennas},
                       {"users", cfg.users},
                       {"mod", cfg.mod_order},
                       {"snr_db", snr},
                       {"iters", cfg.iterations},
                       {"damping", cfg.effective_damping()},
                       {"trials", cfg.trials},
                       {"seed", cfg.seed},
                       {"init", cfg.init == cs::InitMode::paper ? "paper" : "zero"},
                       {"cond_max", cfg.cond_max ? nlohmann::json(*cfg.cond_max)
                                                 : nlohmann::json(nullptr)},
                       {"out", cfg.out},
                       {"format", cfg.format},
                       {"users_list", users_list},
                       {"threads", cfg.threads}}}};
    return m;
}

inline void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << body;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

/// Runs a sweep, writes the table in the configured format to cfg.out and
/// the run manifest beside it as <out>.manifest.json.
inline std::vector<RunRecord> run_sweep_to_files(const ExperimentConfig& cfg) {
    if (cfg.out.empty()) throw std::invalid_argument("output path required");
    const auto rows = run_sweep(cfg);
    if (cfg.format == "json")
        write_file(cfg.out, to_json(rows).dump(2) + "\n");
    else
        write_file(cfg.out, to_csv(rows));
    write_file(cfg.out + ".manifest.json", manifest_json(cfg).dump(2) + "\n");
    return rows;
}

/// Runs a timing scan, writes its table to cfg.out plus the manifest with
/// the fitted slope.
inline TimingResult timing_scan_to_files(const ExperimentConfig& cfg) {
    if (cfg.out.empty()) throw std::invalid_argument("output path required");
    const auto result = timing_scan(cfg);
    write_file(cfg.out, to_csv(result));
    nlohmann::json manifest = manifest_json(cfg);
    manifest["loglog_slope"] = result.loglog_slope;
    write_file(cfg.out + ".manifest.json", manifest.dump(2) + "\n");
    return result;
}

}  // namespace csiga::harness
