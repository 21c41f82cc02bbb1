#include "circprop/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "circprop/analysis.hpp"
#include "circprop/error.hpp"
#include "circprop/evolution.hpp"
#include "circprop/numerics.hpp"
#include "circprop/parallel.hpp"
#include "circprop/propagator.hpp"
#include "circprop/qubit.hpp"

namespace circprop::cli {

namespace {

void add_evolve_flags(CLI::App* sub, RunConfig& c) {
    sub->add_option("--n-qubits", c.n_qubits, "grid size N = 2^n")->check(CLI::Range(1, 20));
    sub->add_option("--potential", c.potential, "none | cosine | random")
        ->check(CLI::IsMember({"none", "cosine", "random"}));
    sub->add_option("--eta", c.eta, "max_J u_J * tau_step")->check(CLI::NonNegativeNumber);
    sub->add_option("--x0", c.x0, "packet centre x0 / L");
    sub->add_option("--m0", c.m0, "packet momentum index M0");
    sub->add_option("--sigma-l", c.sigma_l, "packet width sigma * L")->check(CLI::PositiveNumber);
    sub->add_option("--steps", c.steps, "number of Trotter steps")->check(CLI::NonNegativeNumber);
    sub->add_option("--stride", c.stride, "keep every R-th step")->check(CLI::PositiveNumber);
    sub->add_option("--step-k", c.step_k, "tau_step = k / N")->check(CLI::PositiveNumber);
    sub->add_option("--order", c.order, "potential-first | kinetic-first")
        ->check(CLI::IsMember({"potential-first", "kinetic-first"}));
}

void build_app(CLI::App& app, RunConfig& c) {
    app.set_version_flag("--version", library_version());
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--out", c.out, "output file (default stdout)");
    app.add_option("--format", c.format, "csv | json")
        ->transform(CLI::CheckedTransformer(std::map<std::string, OutputFormat>{{"csv", OutputFormat::csv},
                                                                                {"json", OutputFormat::json}}));
    app.add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1, 1024));
    app.add_option("--seed", c.seed, "seed for the random potential");
    app.add_flag("--verbose", c.verbose, "timing on stderr");

    auto* prop = app.add_subcommand("propagator", "free propagator kernel D(dJ) at t = p/q");
    prop->add_option("--n-sites", c.n_sites, "even N")->required()->check(CLI::PositiveNumber);
    prop->add_option("--p", c.p, "numerator");
    prop->add_option("--q", c.q, "denominator")->check(CLI::PositiveNumber);
    c.mode = "direct";
    prop->add_option("--mode", c.mode, "direct | exact | both")->check(CLI::IsMember({"direct", "exact", "both"}));

    add_evolve_flags(app.add_subcommand("evolve", "split-step evolution of a Gaussian packet"), c);
    add_evolve_flags(app.add_subcommand("trajectory", "probability maximum per snapshot"), c);

    auto* pm = app.add_subcommand("phase-map", "|arg psi| over (t, xi)");
    add_evolve_flags(pm, c);
    pm->add_option("--source", c.source, "evolve | propagator")->check(CLI::IsMember({"evolve", "propagator"}));
    pm->add_option("--k-max", c.k_max, "propagator source: t = k/N for k = 0..k_max")
        ->check(CLI::NonNegativeNumber);

    auto* gs = app.add_subcommand("gauss-sum", "normalised quadratic Gauss sums");
    gs->add_option("--p", c.p, "numerator");
    gs->add_option("--q", c.q, "denominator")->check(CLI::PositiveNumber);
    gs->add_option("--delta-xi", c.delta_xi, "displacement a/b (default: every allowed one)");

    auto* th = app.add_subcommand("theta", "truncated theta sum");
    th->add_option("--xi", c.xi, "xi");
    th->add_option("--tau-re", c.tau_re, "Re tau");
    th->add_option("--tau-im", c.tau_im, "Im tau, must be negative");
    th->add_option("--tol", c.tol, "first omitted term bound")->check(CLI::PositiveNumber);
    th->add_option("--max-terms", c.max_terms, "cutoff cap")->check(CLI::PositiveNumber);

    auto* qb = app.add_subcommand("qubit", "propagator of the bounded kinetic term");
    qb->add_option("--mode", c.mode, "direct | closed | small-time | lightcone")
        ->required()
        ->check(CLI::IsMember({"direct", "closed", "small-time", "lightcone"}));
    qb->add_option("--n-sites", c.n_sites, "even N (direct mode)")->check(CLI::PositiveNumber);
    qb->add_option("--tau", c.tau, "time");
    qb->add_option("--dj-max", c.dj_max, "rows for dJ in [-M, M]")->check(CLI::NonNegativeNumber);
}

std::string subcommand_name(const CLI::App& app) {
    const auto subs = app.get_subcommands();
    return subs.empty() ? std::string{} : subs.front()->get_name();
}

double phase_or_nan(Complex v, double peak) {
    return std::abs(v) > kPhaseAmplitudeFloor * peak ? std::arg(v) : kUndefinedPhase;
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        const std::int64_t num = std::stoll(text.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? text.size() : slash)) throw std::invalid_argument("num");
        std::int64_t den = 1;
        if (slash != std::string::npos) {
            const std::string tail = text.substr(slash + 1);
            den = std::stoll(tail, &used);
            if (used != tail.size()) throw std::invalid_argument("den");
        }
        if (den == 0) throw std::invalid_argument("zero");
        return {num, den};
    } catch (const std::logic_error&) {
        throw InvalidArgument("cannot read '" + text + "' as a rational a/b");
    }
}

class Echo {
public:
    explicit Echo(Provenance& p) : p_(p) {}
    Echo& add(const std::string& k, const std::string& v) {
        p_.config.emplace_back(k, v);
        return *this;
    }
    Echo& add(const std::string& k, double v) { return add(k, format_number(v)); }
    Echo& add(const std::string& k, std::int64_t v) { return add(k, std::to_string(v)); }
    Echo& add(const std::string& k, int v) { return add(k, std::to_string(v)); }

private:
    Provenance& p_;
};

std::uint64_t seed_of(const RunConfig& c) { return c.seed.value_or(0); }

void echo_evolve(Echo& e, const RunConfig& c) {
    e.add("n_qubits", c.n_qubits)
        .add("potential", c.potential)
        .add("eta", c.eta)
        .add("seed", std::to_string(seed_of(c)))
        .add("x0", c.x0)
        .add("m0", c.m0)
        .add("sigma_l", c.sigma_l)
        .add("steps", c.steps)
        .add("stride", c.stride)
        .add("step_k", c.step_k)
        .add("order", c.order);
}

EvolutionRecord run_evolution(const RunConfig& c) {
    const Grid grid = Grid::from_qubits(c.n_qubits);
    const PacketParams params{c.x0, c.m0, c.sigma_l};
    const double tau_step = static_cast<double>(c.step_k) / static_cast<double>(grid.size());
    PotentialGrid pot = zero_potential(grid);
    switch (potential_kind_from_string(c.potential)) {
        case PotentialKind::none: break;
        case PotentialKind::cosine: pot = cosine_potential(grid, c.eta, tau_step); break;
        case PotentialKind::random: pot = random_potential(grid, c.eta, tau_step, seed_of(c)); break;
    }
    SplitStepOptions opts;
    opts.stride = c.stride;
    opts.order = c.order == "kinetic-first" ? TrotterOrder::kinetic_first : TrotterOrder::potential_first;
    return split_step(build_packet(grid, params), pot, tau_step, c.steps, opts);
}

void table_from_phase_map(Table& t, const PhaseMap& map) {
    t.columns = {"t", "xi", "abs_phase", "prob"};
    for (std::size_t r = 0; r < map.taus.size(); ++r) {
        for (std::size_t col = 0; col < map.xis.size(); ++col) {
            t.add_row({map.taus[r], map.xis[col], map.phase_at(r, col), map.prob_at(r, col)});
        }
    }
}

RunResult compute_propagator(const RunConfig& c) {
    RunResult res;
    res.provenance.command = "propagator";
    Echo(res.provenance).add("n_sites", c.n_sites).add("p", c.p).add("q", c.q).add("mode", c.mode);
    const Grid grid = Grid::from_sites(c.n_sites);
    const RationalTime t = RationalTime::make(c.p, c.q);

    const auto direct = direct_propagator(grid, t);
    std::optional<PropagatorMatrix> exact;
    if (c.mode != "direct") exact = exact_propagator(grid, t);
    const PropagatorMatrix& primary = exact ? *exact : direct;

    const auto peak_of = [](const PropagatorMatrix& d) {
        double m = 0.0;
        for (const auto& v : d.kernel()) m = std::max(m, std::abs(v));
        return m;
    };
    const double peak = peak_of(primary);
    const double peak_direct = peak_of(direct);

    res.table.columns = {"dJ", "delta_xi", "abs", "phase"};
    if (c.mode == "both") {
        res.table.columns.push_back("abs_direct");
        res.table.columns.push_back("phase_direct");
    }
    for (std::int64_t dj = grid.min_index(); dj <= grid.max_index(); ++dj) {
        const Complex v = primary.kernel(dj);
        std::vector<double> row{static_cast<double>(dj), grid.xi(dj), std::abs(v), phase_or_nan(v, peak)};
        if (c.mode == "both") {
            const Complex d = direct.kernel(dj);
            row.push_back(std::abs(d));
            row.push_back(phase_or_nan(d, peak_direct));
        }
        res.table.add_row(std::move(row));
    }
    return res;
}

RunResult compute_evolve(const RunConfig& c) {
    RunResult res;
    res.provenance.command = "evolve";
    Echo e(res.provenance);
    echo_evolve(e, c);
    const auto rec = run_evolution(c);
    res.table.columns = {"t", "J", "xi", "re", "im", "prob"};
    for (std::size_t i = 0; i < rec.states.size(); ++i) {
        const auto amps = rec.states[i].amps();
        for (std::size_t s = 0; s < amps.size(); ++s) {
            const std::int64_t j = rec.grid.label(s);
            res.table.add_row({rec.times[i], static_cast<double>(j), rec.grid.xi(j), amps[s].real(), amps[s].imag(),
                               std::norm(amps[s])});
        }
    }
    return res;
}

RunResult compute_trajectory(const RunConfig& c) {
    RunResult res;
    res.provenance.command = "trajectory";
    Echo e(res.provenance);
    echo_evolve(e, c);
    const auto traj = probability_max(run_evolution(c));
    res.table.columns = {"t", "xi_max", "prob_max"};
    for (std::size_t i = 0; i < traj.taus.size(); ++i) {
        res.table.add_row({traj.taus[i], traj.xi_max[i], traj.prob_max[i]});
    }
    return res;
}

RunResult compute_phase_map(const RunConfig& c) {
    RunResult res;
    res.provenance.command = "phase-map";
    Echo e(res.provenance);
    e.add("source", c.source);
    if (c.source == "propagator") {
        e.add("n_qubits", c.n_qubits).add("k_max", c.k_max);
        table_from_phase_map(res.table, propagator_phase_map(Grid::from_qubits(c.n_qubits), c.k_max));
    } else {
        echo_evolve(e, c);
        table_from_phase_map(res.table, phase_map(run_evolution(c)));
    }
    return res;
}

RunResult compute_gauss_sum(const RunConfig& c) {
    RunResult res;
    res.provenance.command = "gauss-sum";
    Echo(res.provenance).add("p", c.p).add("q", c.q).add("delta_xi", c.delta_xi.empty() ? "all" : c.delta_xi);
    res.table.columns = {"p", "q", "delta_xi", "re", "im", "abs", "phase"};
    std::vector<Rational> points;
    if (c.delta_xi.empty()) {
        for (std::int64_t n = -c.q; n < c.q; ++n) points.emplace_back(n, 2 * c.q);
    } else {
        points.push_back(parse_rational(c.delta_xi));
    }
    for (const auto& dx : points) {
        const Complex v = numerics::gauss_sum_general(c.p, c.q, dx);
        const double x = static_cast<double>(dx.numerator()) / static_cast<double>(dx.denominator());
        res.table.add_row({static_cast<double>(c.p), static_cast<double>(c.q), x, v.real(), v.imag(), std::abs(v),
                           phase_or_nan(v, 1.0)});
    }
    return res;
}

RunResult compute_theta(const RunConfig& c) {
    RunResult res;
    res.provenance.command = "theta";
    Echo(res.provenance)
        .add("xi", c.xi)
        .add("tau_re", c.tau_re)
        .add("tau_im", c.tau_im)
        .add("tol", c.tol)
        .add("max_terms", c.max_terms);
    numerics::ThetaArgs args;
    args.xi = c.xi;
    args.tau = {c.tau_re, c.tau_im};
    args.tol = c.tol;
    args.max_terms = c.max_terms;
    const auto r = numerics::theta(args);
    res.table.columns = {"xi", "tau_re", "tau_im", "re", "im", "abs", "cutoff", "truncation_error"};
    res.table.add_row({c.xi, c.tau_re, c.tau_im, r.value.real(), r.value.imag(), std::abs(r.value),
                       static_cast<double>(r.cutoff), r.truncation_error});
    return res;
}

RunResult compute_qubit(const RunConfig& c) {
    RunResult res;
    res.provenance.command = "qubit";
    Echo e(res.provenance);
    e.add("mode", c.mode);
    if (c.mode == "direct") e.add("n_sites", c.n_sites);
    e.add("tau", c.tau).add("dj_max", c.dj_max);

    auto& t = res.table;
    t.columns = {"dj", "tau", "re", "im", "abs", "phase"};
    const auto base = [&](std::int64_t dj, Complex v) {
        return std::vector<double>{static_cast<double>(dj), c.tau, v.real(), v.imag(), std::abs(v), std::arg(v)};
    };

    if (c.mode == "lightcone") {
        t.columns.insert(t.columns.end(), {"uniform", "inside", "phase_minus_s"});
        for (const auto& row : qubit::lightcone_profile(c.tau, c.dj_max)) {
            auto r = base(row.delta_j, row.value);
            r.insert(r.end(), {row.uniform, row.inside ? 1.0 : 0.0, row.phase_minus_s});
            t.add_row(std::move(r));
        }
        return res;
    }
    if (c.mode == "direct") {
        if (c.n_sites == 0) throw InvalidArgument("qubit --mode direct needs --n-sites");
        t.columns.push_back("abs_closed");
    } else if (c.mode == "closed") {
        t.columns.push_back("abs_fresnel_form");
    } else {
        t.columns.insert(t.columns.end(), {"abs_closed", "outside_window"});
    }
    for (std::int64_t dj = -c.dj_max; dj <= c.dj_max; ++dj) {
        const double d = static_cast<double>(dj);
        if (c.mode == "direct") {
            auto r = base(dj, qubit::qubit_direct(c.n_sites, dj, c.tau));
            r.push_back(c.tau > 0.0 ? std::abs(qubit::qubit_closed(d, c.tau)) : kUndefinedPhase);
            t.add_row(std::move(r));
        } else if (c.mode == "closed") {
            auto r = base(dj, qubit::qubit_closed(d, c.tau));
            r.push_back(std::abs(qubit::qubit_fresnel_form(d, c.tau)));
            t.add_row(std::move(r));
        } else {
            const auto st = qubit::qubit_small_time(dj, c.tau);
            auto r = base(dj, st.value);
            r.push_back(c.tau > 0.0 ? std::abs(qubit::qubit_closed(d, c.tau)) : kUndefinedPhase);
            r.push_back(st.outside_window ? 1.0 : 0.0);
            t.add_row(std::move(r));
        }
    }
    return res;
}

}  // namespace

RunConfig parse(int argc, const char* const* argv) {
    RunConfig c;
    CLI::App app{"circprop: propagation on a discretised circle", "circprop"};
    build_app(app, c);
    app.parse(argc, argv);
    c.subcommand = subcommand_name(app);
    return c;
}

RunResult compute(const RunConfig& c) {
    set_thread_count(c.threads);
    if (c.subcommand == "propagator") return compute_propagator(c);
    if (c.subcommand == "evolve") return compute_evolve(c);
    if (c.subcommand == "trajectory") return compute_trajectory(c);
    if (c.subcommand == "phase-map") return compute_phase_map(c);
    if (c.subcommand == "gauss-sum") return compute_gauss_sum(c);
    if (c.subcommand == "theta") return compute_theta(c);
    if (c.subcommand == "qubit") return compute_qubit(c);
    throw InvalidArgument("unknown subcommand '" + c.subcommand + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"circprop: propagation on a discretised circle", "circprop"};
    build_app(app, c);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::flag_error;
    }
    c.subcommand = subcommand_name(app);

    const auto start = std::chrono::steady_clock::now();
    RunResult result;
    try {
        result = compute(c);
    } catch (const InvalidArgument& e) {
        err << "circprop: " << e.what() << '\n';
        return ExitCode::flag_error;
    } catch (const IoError& e) {
        err << "circprop: " << e.what() << '\n';
        return ExitCode::io_error;
    } catch (const Error& e) {
        err << "circprop: " << e.what() << '\n';
        return ExitCode::domain_error;
    }

    if (c.out.empty()) {
        write_table(out, c.format, result.provenance, result.table);
    } else {
        std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "circprop: cannot open '" << c.out << "' for writing\n";
            return ExitCode::io_error;
        }
        write_table(file, c.format, result.provenance, result.table);
        file.close();
        if (!file) {
            err << "circprop: write to '" << c.out << "' failed\n";
            return ExitCode::io_error;
        }
    }
    if (c.verbose) {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        err << "circprop: " << c.subcommand << ' ' << result.table.rows.size() << " rows in " << dt.count() << " s\n";
    }
    return ExitCode::ok;
}

}  // namespace circprop::cli
