#include "repsc/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

#include "repsc/errors.hpp"
#include "repsc/quadrature.hpp"
#include "repsc/radon.hpp"
#include "repsc/random_states.hpp"
#include "repsc/snapshot.hpp"

namespace repsc {

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& out, const std::string& name) {
    std::filesystem::create_directories(out);
    std::ofstream os(out / name);
    if (!os) throw std::runtime_error("cannot open output file " + (out / name).string());
    return os;
}

RealField sample_potential_field(const Potential& V, const GridSpec& grid) {
    RealField f{grid, std::vector<double>(grid.size())};
    for (int i0 = 0; i0 < grid.points; ++i0) {
        double x0 = grid.physical_coord(i0);
        for (int i1 = 0; i1 < grid.points; ++i1) {
            double pt[2] = {x0, grid.physical_coord(i1)};
            f.values[flat_index(grid, i0, i1)] = V.value(pt);
        }
    }
    return f;
}

double relative_l2_error(const RealField& a, const RealField& truth) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        double d = a.values[i] - truth.values[i];
        num += d * d;
        den += truth.values[i] * truth.values[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

void emit_warnings(const RunConfig& cfg) {
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
}

} // namespace

int cmd_mehler_check(const RunConfig& cfg, const std::filesystem::path& out) {
    emit_warnings(cfg);
    const GridSpec grid = make_grid(cfg.grid.dim, cfg.grid.points, cfg.grid.half_width);
    std::mt19937_64 rng(cfg.mehler.seed);
    bool ok = true;
    std::string first_failure;
    auto fail = [&](const std::string& what) {
        ok = false;
        if (first_failure.empty()) first_failure = what;
    };

    // 1. agreement of the two factorizations on random band-limited states
    {
        auto os = open_out(out, "mehler_agreement.csv");
        os << "t,states,max_l2_diff,min_compared_mass\n";
        for (double t : cfg.mehler.times) {
            double worst = 0.0, mass = 1.0;
            for (int s = 0; s < cfg.mehler.random_states; ++s) {
                WaveFunction psi = random_bandlimited_state(grid, rng);
                FormsAgreement a = mehler_forms_agreement(psi, t);
                worst = std::max(worst, a.l2_difference);
                mass = std::min(mass, a.compared_mass);
            }
            os << csv_num(t) << ',' << cfg.mehler.random_states << ',' << csv_num(worst)
               << ',' << csv_num(mass) << '\n';
            if (worst > cfg.mehler.agreement_tol || mass < 0.999) fail("agreement");
        }
    }

    // 2. unitarity of both forms
    {
        auto os = open_out(out, "mehler_unitarity.csv");
        os << "t,form,max_defect\n";
        for (double t : cfg.mehler.times) {
            double d_f = 0.0, d_k = 0.0;
            for (int s = 0; s < 8; ++s) {
                WaveFunction psi = random_bandlimited_state(grid, rng);
                d_f = std::max(d_f,
                               std::abs(free_propagate_factored(psi, t).norm() - 1.0));
                d_k = std::max(d_k,
                               std::abs(free_propagate_kinetic_form(psi, t).norm() - 1.0));
            }
            os << csv_num(t) << ",factored," << csv_num(d_f) << '\n';
            os << csv_num(t) << ",kinetic," << csv_num(d_k) << '\n';
            if (std::max(d_f, d_k) > cfg.mehler.unitarity_tol) fail("unitarity");
        }
    }

    // 3. Heisenberg relation <x>(t) = cosh(2t)<x>_0 + sinh(2t)<p>_0 and the
    //    classical-orbit growth exponent
    {
        auto os = open_out(out, "mehler_heisenberg.csv");
        os << "t,x_expect,relation_rhs,residual\n";
        PacketSpec ps;
        ps.center.assign(grid.dim, 0.0);
        ps.velocity.assign(grid.dim, 0.0);
        ps.center[0] = 1.0;
        ps.velocity[0] = 1.0;
        ps.width = 1.0;
        WaveFunction packet = make_packet(grid, ps);
        const double x0 = observable_moment(packet, Observable::position, 0);
        const double p0 = observable_moment(packet, Observable::momentum, 0);
        for (double t : cfg.mehler.times) {
            double lhs = heisenberg_position(packet, t, 0);
            double rhs = std::cosh(2.0 * t) * x0 + std::sinh(2.0 * t) * p0;
            double res = std::abs(lhs - rhs);
            os << csv_num(t) << ',' << csv_num(lhs) << ',' << csv_num(rhs) << ','
               << csv_num(res) << '\n';
            if (std::abs(t) <= 1.0 && res > cfg.mehler.heisenberg_tol) fail("heisenberg");
        }
        std::vector<double> ts, logx;
        for (double t = 0.5; t <= 2.0 + 1e-12; t += 0.125) {
            ts.push_back(t);
            logx.push_back(std::log(std::abs(heisenberg_position(packet, t, 0))));
        }
        LinearFit fit = linear_fit(ts, logx);
        os << "# fitted_growth_exponent," << csv_num(fit.slope) << '\n';
        if (fit.slope < 1.9 || fit.slope > 2.1) fail("growth-exponent");
    }

    // 4. scaling laws of the L2 and homogeneous-H2 norms
    {
        auto os = open_out(out, "mehler_scaling.csv");
        os << "n,lambda,l2_ratio,l2_expected,h2dot_ratio,h2dot_expected\n";
        const double lambdas[] = {0.25, 0.5, 2.0, 4.0};
        for (int n : {1, 2}) {
            GridSpec g = n == 1 ? make_grid(1, 16384, 240.0) : make_grid(2, 512, 30.0);
            auto m_radial = [n](double r) {
                return n == 1 ? 1.0 / (1.0 + r * r) : std::exp(-0.5 * r * r);
            };
            auto sample = [&](double lambda) {
                RealField f{g, std::vector<double>(g.size())};
                if (n == 1) {
                    for (int i = 0; i < g.points; ++i)
                        f.values[i] = m_radial(std::abs(lambda * g.physical_coord(i)));
                } else {
                    for (int i0 = 0; i0 < g.points; ++i0)
                        for (int i1 = 0; i1 < g.points; ++i1)
                            f.values[flat_index(g, i0, i1)] = m_radial(
                                lambda * std::hypot(g.physical_coord(i0), g.physical_coord(i1)));
                }
                return f;
            };
            SobolevNorms base = sobolev_norms(sample(1.0));
            for (double lambda : lambdas) {
                SobolevNorms s = sobolev_norms(sample(lambda));
                double l2r = (s.l2 * s.l2) / (base.l2 * base.l2);
                double h2r = (s.h2dot * s.h2dot) / (base.h2dot * base.h2dot);
                double l2e = std::pow(std::abs(lambda), -n);
                double h2e = std::pow(std::abs(lambda), -n + 4);
                os << n << ',' << csv_num(lambda) << ',' << csv_num(l2r) << ','
                   << csv_num(l2e) << ',' << csv_num(h2r) << ',' << csv_num(h2e) << '\n';
                if (std::abs(l2r / l2e - 1.0) > cfg.mehler.scaling_tol) fail("scaling-l2");
                if (std::abs(h2r / h2e - 1.0) > cfg.mehler.h2dot_tol) fail("scaling-h2dot");
            }
        }
    }

    // 5. Carlson-Beurling scale uniformity for m = <x>^{-2}
    {
        auto os = open_out(out, "mehler_carlson.csv");
        os << "lambda,bl_infty_estimate,ratio_to_bound\n";
        const double lambdas[] = {0.1, 1.0, 10.0};
        GridSpec g = make_grid(1, 16384, 60.0);
        auto rep = carlson_beurling_check([](double r) { return 1.0 / (1.0 + r * r); }, 1,
                                          lambdas, g);
        for (const auto& row : rep.rows)
            os << csv_num(row.lambda) << ',' << csv_num(row.bl_infty_estimate) << ','
               << csv_num(row.ratio_to_bound) << '\n';
        os << "# fitted_constant," << csv_num(rep.fitted_constant) << '\n';
        os << "# estimate_spread," << csv_num(rep.spread) << '\n';
        if (!(rep.fitted_constant > 0.0) || rep.spread > 1e-6) fail("carlson-uniformity");
    }

    if (!ok) {
        std::cerr << "mehler-check: failed check: " << first_failure << "\n";
        return 3;
    }
    return 0;
}

int cmd_evolve(const RunConfig& cfg, const std::filesystem::path& out) {
    emit_warnings(cfg);
    const GridSpec grid = make_grid(cfg.grid.dim, cfg.grid.points, cfg.grid.half_width);
    Potential V(cfg.potential, grid.dim);
    WaveFunction psi = make_packet(grid, cfg.packet_phi);
    std::vector<TrajectorySample> log;
    WaveFunction final_state = evolve(psi, cfg.dynamics.horizon, V, cfg.dynamics, &log);

    auto os = open_out(out, "trajectory.csv");
    os << "t,norm";
    for (int a = 0; a < grid.dim; ++a) os << ",x" << a;
    for (int a = 0; a < grid.dim; ++a) os << ",p" << a;
    os << ",h0,scale\n";
    double drift = 0.0;
    for (const auto& s : log) {
        os << csv_num(s.t) << ',' << csv_num(s.norm);
        for (double x : s.x) os << ',' << csv_num(x);
        for (double p : s.p) os << ',' << csv_num(p);
        os << ',' << csv_num(s.h0) << ',' << csv_num(s.scale) << '\n';
        drift = std::max(drift, std::abs(s.norm - 1.0));
    }
    write_snapshot(out / "final_state.snap", final_state);
    auto sum = open_out(out, "evolve_summary.csv");
    sum << "horizon,steps,max_norm_drift,final_scale\n";
    sum << csv_num(cfg.dynamics.horizon) << ',' << log.size() << ',' << csv_num(drift) << ','
        << csv_num(final_state.grid.scale) << '\n';
    return 0;
}

int cmd_scatter(const RunConfig& cfg, const std::filesystem::path& out, int jobs) {
    emit_warnings(cfg);
    (void)jobs;
    const GridSpec grid = make_grid(cfg.grid.dim, cfg.grid.points, cfg.grid.half_width);
    Potential V(cfg.potential, grid.dim);

    auto os = open_out(out, "scatter_report.csv");
    os << "v_mag";
    for (int a = 0; a < grid.dim; ++a) os << ",vhat" << a;
    os << ",t_used,cook_tail_past,cook_tail_future,unitarity_defect\n";
    int idx = 0;
    for (double vmag : cfg.sweep.v_mags) {
        PacketSpec ps = cfg.packet_phi;
        ps.velocity.resize(grid.dim);
        for (int a = 0; a < grid.dim; ++a) ps.velocity[a] = vmag * cfg.sweep.vhat[a];
        WaveFunction phi = make_packet(grid, ps);
        ScatterResult res = scattering_apply(phi, V, cfg.scatter);
        os << csv_num(vmag);
        for (int a = 0; a < grid.dim; ++a) os << ',' << csv_num(cfg.sweep.vhat[a]);
        os << ',' << csv_num(res.t_used) << ',' << csv_num(res.cook_tail_past) << ','
           << csv_num(res.cook_tail_future) << ',' << csv_num(res.unitarity_defect) << '\n';
        write_snapshot(out / ("outgoing_" + std::to_string(idx++) + ".snap"), res.outgoing);
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out, int jobs) {
    emit_warnings(cfg);
    const GridSpec grid = make_grid(cfg.grid.dim, cfg.grid.points, cfg.grid.half_width);
    Potential V(cfg.potential, grid.dim);
    SweepResult res = velocity_sweep(grid, cfg.sweep, V, jobs);

    auto os = open_out(out, "sweep.csv");
    os << "v_mag";
    for (int a = 0; a < grid.dim; ++a) os << ",vhat" << a;
    os << ",axis,re_pairing,im_pairing,re_oracle,im_oracle,abs_error\n";
    for (const auto& row : res.rows) {
        os << csv_num(row.v_mag);
        for (double c : row.vhat) os << ',' << csv_num(c);
        os << ',' << row.axis << ',' << csv_num(row.pairing.real()) << ','
           << csv_num(row.pairing.imag()) << ',' << csv_num(row.rhs_oracle.real()) << ','
           << csv_num(row.rhs_oracle.imag()) << ',' << csv_num(row.abs_error) << '\n';
    }
    auto plot = open_out(out, "sweep_error.dat");
    for (const auto& row : res.rows)
        plot << csv_num(row.v_mag) << ' ' << csv_num(row.abs_error) << '\n';

    const auto& last = res.rows.back();
    const double denom = std::abs(last.rhs_oracle);
    const double rel = denom > 0.0 ? last.abs_error / denom : last.abs_error;
    if (rel > cfg.sweep.tolerance) {
        std::cerr << "sweep: final relative error " << rel << " above tolerance "
                  << cfg.sweep.tolerance << "\n";
        return 3;
    }
    return 0;
}

int cmd_reconstruct(const RunConfig& cfg, const std::filesystem::path& out, int jobs) {
    emit_warnings(cfg);
    if (cfg.grid.dim != 2)
        throw ConfigError("[reconstruct] requires a 2-d grid");
    if (cfg.reconstruct.mode == ReconMode::scattering &&
        cfg.potential.singular.kind != SingularKind::none)
        throw ConfigError("[reconstruct] scattering mode requires a smooth potential");
    Potential V(cfg.potential, 2);
    const GridSpec field_grid =
        make_grid(2, cfg.reconstruct.field_points, cfg.reconstruct.field_half_width);
    RealField truth = sample_potential_field(V, field_grid);

    const int M = cfg.reconstruct.angles;
    std::vector<double> angles(M);
    for (int a = 0; a < M; ++a) angles[a] = a * std::numbers::pi / M;

    Sinogram sino;
    if (cfg.reconstruct.mode == ReconMode::synthetic) {
        const int n_off = std::max(2 * cfg.reconstruct.field_points, 64);
        const double omax = cfg.reconstruct.field_half_width * std::numbers::sqrt2;
        std::vector<double> offsets(n_off);
        for (int o = 0; o < n_off; ++o)
            offsets[o] = -omax + 2.0 * omax * o / (n_off - 1);
        sino = xray_forward(truth, angles, offsets);
    } else {
        const GridSpec grid = make_grid(2, cfg.grid.points, cfg.grid.half_width);
        const int n_off = cfg.reconstruct.offsets_count;
        std::vector<double> offsets(n_off);
        for (int o = 0; o < n_off; ++o)
            offsets[o] = -cfg.reconstruct.offsets_max +
                         2.0 * cfg.reconstruct.offsets_max * o / (n_off - 1);
        sino.angles = angles;
        sino.offsets = offsets;
        sino.values.assign(static_cast<std::size_t>(M) * n_off, 0.0);
        for (int a = 0; a < M; ++a) {
            double vhat[2] = {std::cos(angles[a]), std::sin(angles[a])};
            XRaySampleSet set = extract_xray_samples(
                V, vhat, offsets, cfg.reconstruct.width, cfg.reconstruct.velocity, grid,
                cfg.scatter, cfg.reconstruct.deconvolve, jobs);
            for (int o = 0; o < n_off; ++o)
                sino.values[static_cast<std::size_t>(a) * n_off + o] = set.values[o];
        }
    }

    {
        auto os = open_out(out, "sinogram.csv");
        os << "# angles";
        for (double a : angles) os << ',' << csv_num(a);
        os << "\n# offsets";
        for (double o : sino.offsets) os << ',' << csv_num(o);
        os << '\n';
        for (std::size_t a = 0; a < sino.angles.size(); ++a) {
            for (std::size_t o = 0; o < sino.offsets.size(); ++o)
                os << (o ? "," : "") << csv_num(sino.at(a, o));
            os << '\n';
        }
    }

    RealField recon = fbp_invert(sino, field_grid, std::min(M, 8));
    write_field_snapshot(out / "reconstruction.snap", recon);

    auto rs = open_out(out, "recon_error.csv");
    rs << "mode,rel_l2_error,tolerance\n";
    const char* mode = cfg.reconstruct.mode == ReconMode::synthetic ? "synthetic" : "scattering";
    if (!cfg.reconstruct.ground_truth) {
        rs << mode << ",n/a,n/a\n";
        return 0;
    }
    const double tol = cfg.reconstruct.mode == ReconMode::synthetic
                           ? cfg.reconstruct.synthetic_tolerance
                           : cfg.reconstruct.tolerance;
    const double err = relative_l2_error(recon, truth);
    rs << mode << ',' << csv_num(err) << ',' << csv_num(tol) << '\n';
    if (err > tol) {
        std::cerr << "reconstruct: relative L2 error " << err << " above tolerance " << tol
                  << "\n";
        return 3;
    }
    return 0;
}

} // namespace repsc
