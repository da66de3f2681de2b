#include "casimir/oracle.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

double spectral_radius(const Mat3c& m) {
    Eigen::ComplexEigenSolver<Mat3c> es(m, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

GreenBlock series_green(double x, double x_p, const ModeGeometry& mode, double a,
                        const Mat3c& R1, const Mat3c& R2, int n_round_trips) {
    if (x <= 0.0 || x >= a || x_p <= 0.0 || x_p >= a) {
        throw ValidationError("series_green positions must lie strictly inside the gap");
    }
    const double w = std::real(mode.w);
    const double E = std::exp(-2.0 * a * w);
    if (spectral_radius(E * R1 * R2) >= 1.0 || spectral_radius(E * R2 * R1) >= 1.0) {
        throw SeriesNotConvergent(
            "round-trip reflection operator has spectral radius >= 1");
    }

    GreenBlock block = bare_green(x, x_p, mode);

    // Bounce chains. State: accumulated operator M, path attenuation S from
    // the source to the most recent bounce plate, and that plate's index.
    // The observed wave decays away from the last bounce plate.
    struct Chain {
        Mat3c M;
        double S;
        int plate;
    };
    Chain left{R1 * transverse_dyad_left(mode), std::exp(-w * x_p), 1};
    Chain right{R2 * transverse_dyad_right(mode), std::exp(-w * (a - x_p)), 2};

    // Order 0 carries the two single-reflection terms; every further order
    // appends one full round trip (two bounces) to each chain, so order n
    // includes reflection sequences up to length 2n + 1 and the truncation
    // error shrinks like the round-trip spectral radius per order.
    const int bounces = 2 * n_round_trips + 1;
    for (int k = 0; k < bounces; ++k) {
        for (Chain* c : {&left, &right}) {
            const double profile =
                c->plate == 1 ? std::exp(-w * x) : std::exp(-w * (a - x));
            block.matrix += profile * c->S * c->M;
            c->S *= std::exp(-w * a);
            c->M = (c->plate == 1 ? R2 : R1) * c->M;
            c->plate = c->plate == 1 ? 2 : 1;
        }
    }
    return block;
}

double pde_residual(const std::function<Mat3c(double)>& green_at, double x,
                    double x_p, const ModeGeometry& mode, double h, double lo,
                    double hi, cplx eps, cplx mu) {
    if (h <= 0.0 || h > (hi - lo) / 10.0) {
        throw StepTooLarge("finite-difference step must be positive and at most "
                           "a tenth of the domain");
    }
    if (x - h < lo || x + h > hi) {
        throw StepTooLarge("finite-difference stencil leaves the evaluation domain");
    }
    if (std::abs(x - x_p) <= 3.0 * h) {
        throw StepTooLarge("finite-difference stencil too close to the source plane");
    }

    const Mat3c gm = green_at(x - h);
    const Mat3c g0 = green_at(x);
    const Mat3c gp = green_at(x + h);
    const Mat3c d1 = (gp - gm) / (2.0 * h);
    const Mat3c d2 = (gp - 2.0 * g0 + gm) / (h * h);

    const cplx iu(0.0, mode.u), iv(0.0, mode.v);
    const double q2 = mode.q * mode.q;
    const double u = mode.u, v = mode.v;
    const cplx k2 = eps * cplx(mode.kappa * mode.kappa);

    Mat3c curlcurl;
    curlcurl.row(0) = iu * d1.row(1) + iv * d1.row(2) + q2 * g0.row(0);
    curlcurl.row(1) = iu * d1.row(0) - d2.row(1) + (v * v) * g0.row(1) -
                      (u * v) * g0.row(2);
    curlcurl.row(2) = iv * d1.row(0) - d2.row(2) + (u * u) * g0.row(2) -
                      (u * v) * g0.row(1);
    const Mat3c residual = curlcurl / mu + k2 * g0;
    return residual.norm();
}

namespace {

// TE unit vector shared by every region, and the TM unit for propagation
// direction D = (p*w_r, iu, iv): m = D x t / kappa_r with kappa_r the
// in-medium wavenumber; both are bilinear-normalized.
Vec3c te_unit(const ModeGeometry& mode) {
    return Vec3c(0.0, -mode.v, mode.u) / mode.q;
}

Vec3c tm_unit(const ModeGeometry& mode, cplx wr, double psign, cplx kappa_r) {
    const Vec3c t = te_unit(mode);
    const Vec3c D(psign * wr, cplx(0.0, mode.u), cplx(0.0, mode.v));
    // Eigen's cross() conjugates complex results; the bilinear product is
    // needed here, so apply the cross-product matrix instead.
    Vec3c m = crossMat(D) * t;
    return m / kappa_r;
}

} // namespace

MatchedReflection interface_matching_oracle(const PlateMaterial& mat,
                                            const ModeGeometry& mode) {
    const cplx zeta(constants::c * mode.kappa, 0.0);
    const Response resp = eval_response(mat, zeta);
    const double w = std::real(mode.w);
    const double kappa = mode.kappa;
    const cplx kappa_m = kappa * std::sqrt(resp.eps * resp.mu);
    const cplx w_med =
        std::sqrt(cplx(mode.q * mode.q) + resp.eps * resp.mu * cplx(kappa * kappa));

    const Vec3c t = te_unit(mode);
    const Vec3c m_inc = tm_unit(mode, cplx(w), +1.0, cplx(kappa));   // incident e^{+wx}
    const Vec3c m_ref = reflectX().cast<cplx>() * m_inc;             // reflected basis
    const Vec3c m_tr = tm_unit(mode, w_med, +1.0, kappa_m);          // transmitted e^{+w1 x}

    // Unknowns: reflected (c_E, c_B) on {t, Rx m_inc} with profile e^{-wx},
    // transmitted (d_E, d_B) on {t, m_tr} with profile e^{+w_med x}.
    // Rows: A_y, A_z, (1/mu)(iv A_x - A_z'), (1/mu)(A_y' - iu A_x) continuity.
    const cplx iu(0.0, mode.u), iv(0.0, mode.v);
    auto rows = [&](const Vec3c& p, cplx dsign_w, cplx mu_r, Eigen::Vector4cd* out) {
        (*out)(0) = p(1);
        (*out)(1) = p(2);
        (*out)(2) = (iv * p(0) - dsign_w * p(2)) / mu_r;
        (*out)(3) = (dsign_w * p(1) - iu * p(0)) / mu_r;
    };

    Eigen::Matrix4cd A;
    Eigen::Vector4cd col;
    // vacuum side carries the reflected waves with +sign in the matching
    // difference (vacuum minus medium)
    rows(t, cplx(-w), cplx(1.0), &col);
    A.col(0) = col;
    rows(m_ref, cplx(-w), cplx(1.0), &col);
    A.col(1) = col;
    rows(t, w_med, resp.mu, &col);
    A.col(2) = -col;
    rows(m_tr, w_med, resp.mu, &col);
    A.col(3) = -col;

    Eigen::FullPivLU<Eigen::Matrix4cd> lu(A);
    if (!lu.isInvertible()) {
        throw SingularMatching("interface matching system is singular");
    }

    MatchedReflection out;
    // TE-polarized incidence
    rows(t, cplx(w), cplx(1.0), &col);
    Eigen::Vector4cd sol_E = lu.solve(-col);
    // TM-polarized incidence
    rows(m_inc, cplx(w), cplx(1.0), &col);
    Eigen::Vector4cd sol_B = lu.solve(-col);

    out.r_E = sol_E(0);
    out.r_B = sol_B(1);
    out.cross_coupling = std::max(std::abs(sol_E(1)), std::abs(sol_B(0)));
    return out;
}

namespace {

struct BvpWave {
    Vec3c p;     // vector amplitude (TE or TM unit)
    cplx dexp;   // profile derivative factor: f'(x) = dexp * f(x)
    double x0;   // anchor: f(x) = e^{dexp (x - x0)}
    int region;  // region index
};

struct BvpRegion {
    cplx eps, mu, w;
};

} // namespace

GreenBlock static_bvp_green(double x, double x_p, const ModeGeometry& mode,
                            const PlateSystem& system) {
    if (mode.beta != 0.0 || system.beta != 0.0) {
        throw ValidationError("static boundary-value oracle requires beta = 0");
    }
    const double a = system.a;
    const bool source_in_gap = x_p > 0.0 && x_p < a;
    const bool source_in_plate = x_p < 0.0;
    if (!source_in_gap && !source_in_plate) {
        throw ValidationError(
            "source plane must lie in the gap or inside plate 1");
    }
    if (x >= a || x == x_p || (source_in_plate && x_p >= 0.0)) {
        throw ValidationError("field point must precede plate 2 and avoid the source");
    }

    const cplx zeta(constants::c * mode.kappa, 0.0);
    const Response r1 = eval_response(system.plate1, zeta);
    const Response r2 = eval_response(system.plate2, zeta);
    const double kappa = mode.kappa;
    const double q2 = mode.q * mode.q;
    auto decay = [&](const Response& r) {
        return std::sqrt(cplx(q2) + r.eps * r.mu * cplx(kappa * kappa));
    };

    // Region table: 0 = leftmost ... 3 = plate 2. The source plane splits its
    // host region into two copies of the same material.
    std::vector<BvpRegion> regions;
    std::vector<double> cuts;  // interface positions between region i and i+1
    if (source_in_gap) {
        regions = {{r1.eps, r1.mu, decay(r1)},
                   {1.0, 1.0, cplx(std::real(mode.w))},
                   {1.0, 1.0, cplx(std::real(mode.w))},
                   {r2.eps, r2.mu, decay(r2)}};
        cuts = {0.0, x_p, a};
    } else {
        regions = {{r1.eps, r1.mu, decay(r1)},
                   {r1.eps, r1.mu, decay(r1)},
                   {1.0, 1.0, cplx(std::real(mode.w))},
                   {r2.eps, r2.mu, decay(r2)}};
        cuts = {x_p, 0.0, a};
    }
    const int source_cut = source_in_gap ? 1 : 0;
    const cplx eps_s = regions[source_cut].eps;

    const Vec3c t = te_unit(mode);
    auto kappa_r = [&](const BvpRegion& r) { return kappa * std::sqrt(r.eps * r.mu); };

    // Two waves per direction per region; leftmost region keeps only the
    // +w (decaying toward -inf) pair, rightmost only the -w pair.
    std::vector<BvpWave> waves;
    auto add_wave = [&](int region, double psign, double anchor) {
        const BvpRegion& r = regions[region];
        waves.push_back({t, psign * r.w, anchor, region});
        waves.push_back({tm_unit(mode, r.w, psign, kappa_r(r)), psign * r.w, anchor,
                         region});
    };
    add_wave(0, +1.0, cuts[0]);
    add_wave(1, -1.0, cuts[0]);
    add_wave(1, +1.0, cuts[1]);
    add_wave(2, -1.0, cuts[1]);
    add_wave(2, +1.0, cuts[2]);
    add_wave(3, -1.0, cuts[2]);

    const cplx iu(0.0, mode.u), iv(0.0, mode.v);
    // Tangential rows: g_y, g_z, (1/mu)(iv g_x - g_z'), (1/mu)(g_y' - iu g_x).
    auto tangential = [&](const BvpWave& wv, double xb, Eigen::Vector4cd* out) {
        const cplx f = std::exp(wv.dexp * (xb - wv.x0));
        const Vec3c p = wv.p * f;
        const cplx mu_r = regions[wv.region].mu;
        (*out)(0) = p(1);
        (*out)(1) = p(2);
        (*out)(2) = (iv * p(0) - wv.dexp * p(2)) / mu_r;
        (*out)(3) = (wv.dexp * p(1) - iu * p(0)) / mu_r;
    };

    Eigen::Matrix<cplx, 12, 12> A = Eigen::Matrix<cplx, 12, 12>::Zero();
    Eigen::Matrix<cplx, 12, 3> rhs = Eigen::Matrix<cplx, 12, 3>::Zero();
    for (int cut = 0; cut < 3; ++cut) {
        Eigen::Vector4cd col;
        for (int wi = 0; wi < static_cast<int>(waves.size()); ++wi) {
            const int reg = waves[wi].region;
            if (reg != cut && reg != cut + 1) continue;
            tangential(waves[wi], cuts[cut], &col);
            const double side = reg == cut + 1 ? +1.0 : -1.0;  // right minus left
            for (int row = 0; row < 4; ++row) {
                A(4 * cut + row, wi) = side * col(row);
            }
        }
    }
    // Source-plane jumps (right minus left), per column j:
    //   [g_y] = iu d_xj / (eps_s kappa^2)      [g_z] = iv d_xj / (eps_s kappa^2)
    //   (1/mu_s)(iv [g_x] - [g_z']) = d_zj     (1/mu_s)(iu [g_x] - [g_y']) = d_yj
    // The assembled rows carry (1/mu)(iv g_x - g_z') and (1/mu)(g_y' - iu g_x),
    // so the y-source row takes -1.
    {
        const int base = 4 * source_cut;
        const cplx contact = 1.0 / (eps_s * cplx(kappa * kappa));
        rhs(base + 0, 0) = iu * contact;
        rhs(base + 1, 0) = iv * contact;
        rhs(base + 2, 2) = 1.0;
        rhs(base + 3, 1) = -1.0;
    }

    Eigen::FullPivLU<Eigen::Matrix<cplx, 12, 12>> lu(A);
    if (!lu.isInvertible() || lu.rcond() < 1e-13) {
        throw IllConditioned("layered matching system is ill-conditioned");
    }
    const Eigen::Matrix<cplx, 12, 3> sol = lu.solve(rhs);

    // Locate the field point's region and sum its waves.
    int region = 0;
    if (source_in_gap) {
        region = x < 0.0 ? 0 : (x < x_p ? 1 : 2);
    } else {
        region = x < x_p ? 0 : (x < 0.0 ? 1 : 2);
    }

    GreenBlock block;
    block.x = x;
    block.x_p = x_p;
    block.mode = mode;
    block.regularized = false;
    block.matrix = Mat3c::Zero();
    for (int wi = 0; wi < static_cast<int>(waves.size()); ++wi) {
        if (waves[wi].region != region) continue;
        const cplx f = std::exp(waves[wi].dexp * (x - waves[wi].x0));
        for (int j = 0; j < 3; ++j) {
            block.matrix.col(j) += sol(wi, j) * f * waves[wi].p;
        }
    }
    return block;
}

} // namespace casimir
