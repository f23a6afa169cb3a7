#include "scenesmith/calibration.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scenesmith/errors.hpp"

namespace scenesmith {

using Mat3 = Eigen::Matrix3d;
using EVec3 = Eigen::Vector3d;

Vec2 Homography::apply(const Vec2& p) const {
    const double w = m[6] * p.x + m[7] * p.y + m[8];
    return {(m[0] * p.x + m[1] * p.y + m[2]) / w, (m[3] * p.x + m[4] * p.y + m[5]) / w};
}

void Homography::normalize() {
    if (std::abs(m[8]) > 1e-9) {
        const double s = 1.0 / m[8];
        for (double& v : m) v *= s;
    } else {
        double fro = 0;
        for (double v : m) fro += v * v;
        const double s = 1.0 / std::sqrt(fro);
        for (double& v : m) v *= s;
    }
}

namespace {

Mat3 to_eigen(const std::array<double, 9>& a) {
    Mat3 m;
    m << a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8];
    return m;
}

std::array<double, 9> from_eigen(const Mat3& m) {
    return {m(0, 0), m(0, 1), m(0, 2), m(1, 0), m(1, 1), m(1, 2), m(2, 0), m(2, 1), m(2, 2)};
}

// Hartley normalization: centroid to origin, mean distance sqrt(2).
Mat3 normalizing_transform(const std::vector<Vec2>& pts) {
    double mx = 0, my = 0;
    for (const auto& p : pts) { mx += p.x; my += p.y; }
    mx /= pts.size();
    my /= pts.size();
    double mean_dist = 0;
    for (const auto& p : pts) mean_dist += std::hypot(p.x - mx, p.y - my);
    mean_dist /= pts.size();
    const double s = mean_dist < 1e-12 ? 1.0 : std::sqrt(2.0) / mean_dist;
    Mat3 t;
    t << s, 0, -s * mx, 0, s, -s * my, 0, 0, 1;
    return t;
}

// The set spans a plane iff some triangle has area above 1e-9 of the bbox
// area. The largest triangle with the farthest-pair baseline is within a
// factor 2 of the global maximum, which is plenty for a degeneracy test.
bool all_collinear(const std::vector<Vec2>& pts, double rel_tol) {
    double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
    for (const auto& p : pts) {
        min_x = std::min(min_x, p.x); max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y); max_y = std::max(max_y, p.y);
    }
    const double bbox_area = std::max((max_x - min_x) * (max_y - min_y), 1e-300);

    const Vec2 p0 = pts[0];
    std::size_t far_idx = 0;
    double far_d = -1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = std::hypot(pts[i].x - p0.x, pts[i].y - p0.y);
        if (d > far_d) { far_d = d; far_idx = i; }
    }
    const Vec2 p1 = pts[far_idx];
    double max_area = 0;
    for (const auto& p : pts) {
        const double ax = p1.x - p0.x, ay = p1.y - p0.y;
        const double bx = p.x - p0.x, by = p.y - p0.y;
        max_area = std::max(max_area, 0.5 * std::abs(ax * by - ay * bx));
    }
    return max_area <= rel_tol * bbox_area;
}

}  // namespace

Homography estimate_homography(const std::vector<PlanarPair>& pairs, double* max_transfer_error) {
    if (pairs.size() < 4) throw InsufficientPoints("estimate_homography: need >= 4 pairs");

    std::vector<Vec2> src, dst;
    src.reserve(pairs.size());
    dst.reserve(pairs.size());
    for (const auto& p : pairs) { src.push_back(p.src); dst.push_back(p.dst); }

    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = i + 1; j < src.size(); ++j)
            if ((std::hypot(src[i].x - src[j].x, src[i].y - src[j].y) < 1e-12) ||
                (std::hypot(dst[i].x - dst[j].x, dst[i].y - dst[j].y) < 1e-12))
                throw DegenerateConfiguration("estimate_homography: duplicate points");

    if (all_collinear(src, 1e-9) || all_collinear(dst, 1e-9))
        throw DegenerateConfiguration("estimate_homography: collinear points");

    const Mat3 ts = normalizing_transform(src);
    const Mat3 td = normalizing_transform(dst);

    const auto n = static_cast<Eigen::Index>(pairs.size());
    Eigen::MatrixXd a(2 * n, 9);
    for (Eigen::Index i = 0; i < n; ++i) {
        const EVec3 s = ts * EVec3(src[i].x, src[i].y, 1.0);
        const EVec3 d = td * EVec3(dst[i].x, dst[i].y, 1.0);
        a.row(2 * i) << 0, 0, 0, -s.x(), -s.y(), -1, d.y() * s.x(), d.y() * s.y(), d.y();
        a.row(2 * i + 1) << s.x(), s.y(), 1, 0, 0, 0, -d.x() * s.x(), -d.x() * s.y(), -d.x();
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    // A rank deficit beyond the expected nullspace means H is not unique.
    if (sv(7) < 1e-12 * sv(0))
        throw DegenerateConfiguration("estimate_homography: rank-deficient system");

    Eigen::VectorXd h = svd.matrixV().col(8);
    Mat3 hn;
    hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);
    Mat3 hm = td.inverse() * hn * ts;

    if (std::abs(hm.determinant()) < 1e-12)
        throw DegenerateConfiguration("estimate_homography: singular homography");

    Homography out;
    out.m = from_eigen(hm);
    out.normalize();

    if (max_transfer_error) {
        double worst = 0;
        for (const auto& p : pairs) {
            const Vec2 q = out.apply(p.src);
            worst = std::max(worst, std::hypot(q.x - p.dst.x, q.y - p.dst.y));
        }
        *max_transfer_error = worst;
    }
    return out;
}

namespace {

struct PlaneFit {
    EVec3 centroid;
    EVec3 e1, e2, normal;  // orthonormal basis; e1,e2 span the plane
    double residual = 0;   // max out-of-plane distance
    double extent = 0;     // point cloud diameter proxy
};

PlaneFit fit_plane(const std::vector<Correspondence2D3D>& corr) {
    PlaneFit fit;
    EVec3 c = EVec3::Zero();
    for (const auto& p : corr) c += EVec3(p.point.x, p.point.y, p.point.z);
    c /= static_cast<double>(corr.size());
    Eigen::MatrixXd d(corr.size(), 3);
    for (std::size_t i = 0; i < corr.size(); ++i)
        d.row(static_cast<Eigen::Index>(i)) =
            (EVec3(corr[i].point.x, corr[i].point.y, corr[i].point.z) - c).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeFullV);
    fit.centroid = c;
    fit.e1 = svd.matrixV().col(0);
    fit.e2 = svd.matrixV().col(1);
    fit.normal = svd.matrixV().col(2);
    fit.extent = 0;
    fit.residual = 0;
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        fit.extent = std::max(fit.extent, d.row(i).norm());
        fit.residual = std::max(fit.residual, std::abs(d.row(i).dot(fit.normal.transpose())));
    }
    return fit;
}

Mat3 intrinsics_matrix(const CameraIntrinsics& k) {
    Mat3 m;
    m << k.fx, 0, k.cx, 0, k.fy, k.cy, 0, 0, 1;
    return m;
}

Mat3 project_to_rotation(const Mat3& m) {
    Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 r = svd.matrixU() * svd.matrixV().transpose();
    if (r.determinant() < 0) {
        Mat3 flip = Mat3::Identity();
        flip(2, 2) = -1;
        r = svd.matrixU() * flip * svd.matrixV().transpose();
    }
    return r;
}

int count_positive_depths(const std::vector<Correspondence2D3D>& corr, const Mat3& r,
                          const EVec3& t) {
    int n = 0;
    for (const auto& c : corr) {
        const EVec3 pc = r * EVec3(c.point.x, c.point.y, c.point.z) + t;
        if (pc.z() > 0) ++n;
    }
    return n;
}

// Pose init for coplanar points: homography from in-plane coordinates to
// pixels, decomposed as K^-1 H ~ [r1 r2 t].
void init_pose_coplanar(const std::vector<Correspondence2D3D>& corr,
                        const CameraIntrinsics& intr, const PlaneFit& plane, Mat3& r_out,
                        EVec3& t_out) {
    std::vector<PlanarPair> pairs;
    pairs.reserve(corr.size());
    for (const auto& c : corr) {
        const EVec3 d = EVec3(c.point.x, c.point.y, c.point.z) - plane.centroid;
        pairs.push_back({{d.dot(plane.e1), d.dot(plane.e2)}, c.pixel});
    }
    const Homography h = estimate_homography(pairs);
    const Mat3 b = intrinsics_matrix(intr).inverse() * to_eigen(h.m);

    const double scale = 2.0 / (b.col(0).norm() + b.col(1).norm());
    for (double sign : {1.0, -1.0}) {
        const Mat3 bs = sign * scale * b;
        Mat3 rf;
        rf.col(0) = bs.col(0);
        rf.col(1) = bs.col(1);
        rf.col(2) = bs.col(0).cross(bs.col(1));
        const Mat3 r_plane = project_to_rotation(rf);
        const EVec3 t_plane = bs.col(2);

        // compose plane frame -> world: x_w = centroid + M x_f
        Mat3 m;
        m.col(0) = plane.e1;
        m.col(1) = plane.e2;
        m.col(2) = plane.normal;
        const Mat3 r = r_plane * m.transpose();
        const EVec3 t = t_plane - r * plane.centroid;
        if (count_positive_depths(corr, r, t) == static_cast<int>(corr.size())) {
            r_out = r;
            t_out = t;
            return;
        }
    }
    throw DegenerateConfiguration("solve_pnp: homography decomposition has no positive-depth solution");
}

// Pose init for general position: DLT of the 3x4 projection matrix.
void init_pose_general(const std::vector<Correspondence2D3D>& corr, const CameraIntrinsics& intr,
                       Mat3& r_out, EVec3& t_out) {
    const auto n = static_cast<Eigen::Index>(corr.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 12);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& c = corr[static_cast<std::size_t>(i)];
        const double x = c.point.x, y = c.point.y, z = c.point.z;
        const double u = c.pixel.x, v = c.pixel.y;
        a.row(2 * i) << x, y, z, 1, 0, 0, 0, 0, -u * x, -u * y, -u * z, -u;
        a.row(2 * i + 1) << 0, 0, 0, 0, x, y, z, 1, -v * x, -v * y, -v * z, -v;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(10) < 1e-12 * sv(0))
        throw DegenerateConfiguration("solve_pnp: degenerate DLT system");
    const Eigen::VectorXd p = svd.matrixV().col(11);
    Eigen::Matrix<double, 3, 4> pm;
    pm << p(0), p(1), p(2), p(3), p(4), p(5), p(6), p(7), p(8), p(9), p(10), p(11);

    Eigen::Matrix<double, 3, 4> b = intrinsics_matrix(intr).inverse() * pm;
    if (b.leftCols<3>().determinant() < 0) b = -b;
    const Eigen::JacobiSVD<Mat3> bsvd(b.leftCols<3>());
    const double scale = 3.0 / bsvd.singularValues().sum();
    r_out = project_to_rotation(b.leftCols<3>());
    t_out = scale * b.col(3);
}

struct LmResult {
    Mat3 r;
    EVec3 t;
};

// Levenberg-Marquardt on pixel reprojection error; 6 parameters
// (right-multiplied axis-angle increment on R, additive on t).
LmResult refine_pose_lm(const std::vector<Correspondence2D3D>& corr,
                        const CameraIntrinsics& intr, Mat3 r, EVec3 t, const PnpOptions& opts) {
    const auto n = static_cast<Eigen::Index>(corr.size());

    auto cost_of = [&](const Mat3& rr, const EVec3& tt, Eigen::VectorXd* residuals) {
        double cost = 0;
        if (residuals) residuals->resize(2 * n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& c = corr[static_cast<std::size_t>(i)];
            const EVec3 pc = rr * EVec3(c.point.x, c.point.y, c.point.z) + tt;
            const double z = pc.z();
            const double ru = intr.fx * pc.x() / z + intr.cx - c.pixel.x;
            const double rv = intr.fy * pc.y() / z + intr.cy - c.pixel.y;
            cost += ru * ru + rv * rv;
            if (residuals) {
                (*residuals)(2 * i) = ru;
                (*residuals)(2 * i + 1) = rv;
            }
        }
        return cost;
    };

    auto exp_so3 = [](const EVec3& w) {
        const double theta = w.norm();
        if (theta < 1e-14) return Mat3(Mat3::Identity());
        const EVec3 k = w / theta;
        Mat3 kx;
        kx << 0, -k.z(), k.y(), k.z(), 0, -k.x(), -k.y(), k.x(), 0;
        return Mat3(Mat3::Identity() + std::sin(theta) * kx + (1 - std::cos(theta)) * kx * kx);
    };

    Eigen::VectorXd residuals;
    double cost = cost_of(r, t, &residuals);
    double lambda = 1e-3;
    bool converged = false;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        Eigen::MatrixXd jac(2 * n, 6);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& c = corr[static_cast<std::size_t>(i)];
            const EVec3 pl(c.point.x, c.point.y, c.point.z);
            const EVec3 pc = r * pl + t;
            const double z = pc.z(), iz = 1.0 / z;
            Eigen::Matrix<double, 2, 3> jp;
            jp << intr.fx * iz, 0, -intr.fx * pc.x() * iz * iz,
                  0, intr.fy * iz, -intr.fy * pc.y() * iz * iz;
            Mat3 plx;
            plx << 0, -pl.z(), pl.y(), pl.z(), 0, -pl.x(), -pl.y(), pl.x(), 0;
            jac.block<2, 3>(2 * i, 0) = -jp * r * plx;  // d/dw of R exp([w]) p
            jac.block<2, 3>(2 * i, 3) = jp;
        }

        const Eigen::VectorXd g = jac.transpose() * residuals;
        if (g.lpNorm<Eigen::Infinity>() < opts.gradient_tolerance) {
            converged = true;
            break;
        }
        const Eigen::MatrixXd jtj = jac.transpose() * jac;

        bool accepted = false;
        for (int attempt = 0; attempt < 24 && !accepted; ++attempt) {
            Eigen::MatrixXd h = jtj;
            for (int k = 0; k < 6; ++k) h(k, k) += lambda * std::max(jtj(k, k), 1e-12);
            const Eigen::VectorXd step = h.ldlt().solve(-g);
            const Mat3 r_new = r * exp_so3(step.head<3>());
            const EVec3 t_new = t + step.tail<3>();
            Eigen::VectorXd res_new;
            const double cost_new = cost_of(r_new, t_new, &res_new);
            if (cost_new < cost) {
                const double rel = (cost - cost_new) / std::max(cost, 1e-300);
                r = project_to_rotation(r_new);
                t = t_new;
                residuals = std::move(res_new);
                cost = cost_new;
                lambda = std::max(lambda * 0.1, 1e-12);
                accepted = true;
                if (rel < opts.cost_tolerance) converged = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!accepted || converged) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NonConvergence("solve_pnp: LM exceeded iteration budget while still improving");
    return {r, t};
}

}  // namespace

double rms_reprojection(const std::vector<Correspondence2D3D>& corr, const CameraModel& cam,
                        std::vector<double>* per_point) {
    double sum_sq = 0;
    if (per_point) per_point->clear();
    for (const auto& c : corr) {
        const Vec2 q = project(c.point, cam);
        const double e = std::hypot(q.x - c.pixel.x, q.y - c.pixel.y);
        sum_sq += e * e;
        if (per_point) per_point->push_back(e);
    }
    return std::sqrt(sum_sq / static_cast<double>(corr.size()));
}

CameraPose solve_pnp(const std::vector<Correspondence2D3D>& corr,
                     const CameraIntrinsics& intrinsics, const PnpOptions& opts) {
    if (corr.size() < 4)
        throw InsufficientPoints("solve_pnp: need >= 4 coplanar or >= 6 general-position points");

    const PlaneFit plane = fit_plane(corr);
    const bool coplanar = plane.residual < 1e-6 * std::max(plane.extent, 1e-12);
    if (!coplanar && corr.size() < 6)
        throw InsufficientPoints("solve_pnp: non-coplanar input needs >= 6 points");
    if (plane.extent < 1e-12)
        throw DegenerateConfiguration("solve_pnp: all points coincide");

    Mat3 r;
    EVec3 t;
    if (coplanar)
        init_pose_coplanar(corr, intrinsics, plane, r, t);
    else
        init_pose_general(corr, intrinsics, r, t);

    const LmResult refined = refine_pose_lm(corr, intrinsics, r, t, opts);

    if (count_positive_depths(corr, refined.r, refined.t) != static_cast<int>(corr.size()))
        throw DegenerateConfiguration("solve_pnp: refined pose places points behind the camera");

    CameraPose pose;
    pose.rotation.m = from_eigen(refined.r);
    pose.translation = {refined.t.x(), refined.t.y(), refined.t.z()};
    return pose;
}

std::vector<double> default_focal_grid() {
    std::vector<double> grid(31);
    const double lo = std::log(0.5), hi = std::log(2.0);
    for (int i = 0; i < 31; ++i) grid[i] = std::exp(lo + (hi - lo) * i / 30.0);
    return grid;
}

CalibrationResult grid_search_intrinsics(const std::vector<Correspondence2D3D>& corr,
                                         const CameraIntrinsics& init,
                                         const GridSearchOptions& opts) {
    const std::vector<double>& grid = opts.focal_multipliers;
    if (grid.empty()) throw AllCellsFailed("grid_search_intrinsics: empty grid");

    bool any_ok = false;
    std::string last_error = "no cells evaluated";
    CalibrationResult best;
    double best_rms = 0, best_dist = 0;

    for (double mult : grid) {
        CameraIntrinsics k = init;
        k.fx = init.fx * mult;
        k.fy = init.fy * mult;
        if (opts.fix_principal_to_center) {
            k.cx = init.width / 2.0;
            k.cy = init.height / 2.0;
        }
        try {
            CameraModel cam;
            cam.intrinsics = k;
            cam.pose = solve_pnp(corr, k);
            cam.meters_per_unit = opts.meters_per_unit;
            std::vector<double> residuals;
            const double rms = rms_reprojection(corr, cam, &residuals);
            const double dist = std::abs(std::log(mult));
            if (!any_ok || rms < best_rms - 1e-15 ||
                (std::abs(rms - best_rms) <= 1e-15 && dist < best_dist)) {
                best.camera = cam;
                best.rms_reprojection_px = rms;
                best.per_point_residuals = std::move(residuals);
                best_rms = rms;
                best_dist = dist;
                any_ok = true;
            }
        } catch (const Error& e) {
            last_error = e.what();
        }
    }
    if (!any_ok) throw AllCellsFailed("grid_search_intrinsics: all cells failed (" + last_error + ")");
    return best;
}

Raster8 extract_background(const std::vector<Raster8>& frames) {
    if (frames.size() < 3) throw InsufficientFrames("extract_background: need >= 3 frames");
    const auto& first = frames.front();
    for (const auto& f : frames)
        if (f.width != first.width || f.height != first.height || f.channels != first.channels)
            throw MismatchedDimensions("extract_background: frames differ in size or channels");

    Raster8 out(first.width, first.height, first.channels);
    std::vector<std::uint8_t> column(frames.size());
    const std::size_t n = out.data.size();
    const std::size_t mid = (frames.size() - 1) / 2;  // lower median for even counts
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t f = 0; f < frames.size(); ++f) column[f] = frames[f].data[i];
        std::nth_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(mid),
                         column.end());
        out.data[i] = column[mid];
    }
    return out;
}

namespace {

double bilinear_sample(const Raster8& img, double x, double y, int channel) {
    // clamp-to-edge sampling on pixel centers
    x = std::clamp(x, 0.0, static_cast<double>(img.width - 1));
    y = std::clamp(y, 0.0, static_cast<double>(img.height - 1));
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const int x1 = std::min(x0 + 1, img.width - 1);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double fx = x - x0, fy = y - y0;
    const double v00 = img.at(x0, y0, channel), v10 = img.at(x1, y0, channel);
    const double v01 = img.at(x0, y1, channel), v11 = img.at(x1, y1, channel);
    return (v00 * (1 - fx) + v10 * fx) * (1 - fy) + (v01 * (1 - fx) + v11 * fx) * fy;
}

}  // namespace

Raster8 extract_plane_texture(const Raster8& background,
                              const std::array<Vec3, 4>& plane_corners_world,
                              const CameraModel& cam, int tex_w, int tex_h) {
    if (tex_w < 1 || tex_h < 1) throw InvalidParams("extract_plane_texture: bad texture size");

    std::array<Vec2, 4> projected;
    for (int i = 0; i < 4; ++i) projected[i] = project(plane_corners_world[i], cam);

    const double w = tex_w, h = tex_h;
    const std::vector<PlanarPair> pairs = {{{0, 0}, projected[0]},
                                           {{w, 0}, projected[1]},
                                           {{w, h}, projected[2]},
                                           {{0, h}, projected[3]}};
    const Homography hm = estimate_homography(pairs);

    Raster8 out(tex_w, tex_h, background.channels);
    for (int y = 0; y < tex_h; ++y)
        for (int x = 0; x < tex_w; ++x) {
            const Vec2 p = hm.apply({x + 0.5, y + 0.5});
            for (int c = 0; c < background.channels; ++c) {
                const double v = bilinear_sample(background, p.x - 0.5, p.y - 0.5, c);
                out.at(x, y, c) = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
            }
        }
    return out;
}

std::vector<Correspondence2D3D> parse_correspondence_csv(const std::string& text) {
    std::vector<Correspondence2D3D> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::array<double, 5> vals{};
        std::size_t pos = 0;
        for (int i = 0; i < 5; ++i) {
            const std::size_t comma = line.find(',', pos);
            const std::string cell =
                line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                std::size_t used = 0;
                vals[i] = std::stod(cell, &used);
                if (cell.find_first_not_of(" \t\r", used) != std::string::npos)
                    throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw ParseError("correspondence CSV line " + std::to_string(line_no) +
                                     ": expected `u,v,X,Y,Z`, got `" + line + "`",
                                 line_no);
            }
            if (comma == std::string::npos && i < 4)
                throw ParseError("correspondence CSV line " + std::to_string(line_no) +
                                     ": expected 5 comma-separated values",
                                 line_no);
            pos = comma + 1;
        }
        out.push_back({{vals[0], vals[1]}, {vals[2], vals[3], vals[4]}});
    }
    return out;
}

std::vector<Correspondence2D3D> load_correspondence_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open correspondence file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_correspondence_csv(ss.str());
}

std::string calibration_to_json(const CalibrationResult& result) {
    nlohmann::json j;
    const auto& k = result.camera.intrinsics;
    j["fx"] = k.fx;
    j["fy"] = k.fy;
    j["cx"] = k.cx;
    j["cy"] = k.cy;
    j["width"] = k.width;
    j["height"] = k.height;
    j["R"] = result.camera.pose.rotation.m;
    j["t"] = std::array<double, 3>{result.camera.pose.translation.x,
                                   result.camera.pose.translation.y,
                                   result.camera.pose.translation.z};
    j["meters_per_unit"] = result.camera.meters_per_unit;
    j["rms_px"] = result.rms_reprojection_px;
    return j.dump(2) + "\n";
}

CalibrationResult calibration_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("calibration document: ") + e.what());
    }
    try {
        CalibrationResult r;
        auto& k = r.camera.intrinsics;
        k.fx = j.at("fx").get<double>();
        k.fy = j.at("fy").get<double>();
        k.cx = j.at("cx").get<double>();
        k.cy = j.at("cy").get<double>();
        k.width = j.at("width").get<int>();
        k.height = j.at("height").get<int>();
        r.camera.pose.rotation.m = j.at("R").get<std::array<double, 9>>();
        const auto t = j.at("t").get<std::array<double, 3>>();
        r.camera.pose.translation = {t[0], t[1], t[2]};
        r.camera.meters_per_unit = j.at("meters_per_unit").get<double>();
        r.rms_reprojection_px = j.at("rms_px").get<double>();
        if (!r.camera.pose.rotation.is_orthonormal(1e-6))
            throw ParseError("calibration document: R is not a rotation");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("calibration document: ") + e.what());
    }
}

}  // namespace scenesmith
