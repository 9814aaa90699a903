#include "qxy/contour.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qxy {

namespace {

// Zero counts as positive so that a contour passing exactly through a node
// is still picked up on its sign-change edges.
int sign_of(double v) { return v < 0.0 ? -1 : 1; }

struct Point {
    double x;
    double y;
};

// One refined zero crossing on the segment (ax,ay)-(bx,by), where fa and fb
// have opposite signs (or one of them is already within tol).
Point refine_crossing(double ax, double ay, double fa, double bx, double by,
                      double fb, const FieldFunction& f, double tol) {
    if (std::abs(fa) <= tol) return {ax, ay};
    if (std::abs(fb) <= tol) return {bx, by};
    const int target = sign_of(fa);
    double lo_x = ax, lo_y = ay;
    double hi_x = bx, hi_y = by;
    double mx = 0.5 * (lo_x + hi_x);
    double my = 0.5 * (lo_y + hi_y);
    for (int iter = 0; iter < 200; ++iter) {
        mx = 0.5 * (lo_x + hi_x);
        my = 0.5 * (lo_y + hi_y);
        const double fm = f(mx, my);
        if (std::abs(fm) <= tol) {
            return {mx, my};
        }
        if (sign_of(fm) == target) {
            lo_x = mx;
            lo_y = my;
        } else {
            hi_x = mx;
            hi_y = my;
        }
    }
    return {mx, my};
}

}  // namespace

std::vector<Polyline> extract_zero_contour(const std::vector<double>& values,
                                           const Axis& axis1,
                                           const Axis& axis2,
                                           const FieldFunction& f,
                                           double tol) {
    const int n1 = axis1.count;
    const int n2 = axis2.count;
    if (n1 < 2 || n2 < 2) {
        throw std::invalid_argument(
            "extract_zero_contour: both axis counts must be >= 2");
    }
    if (values.size() != static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2)) {
        throw std::invalid_argument(
            "extract_zero_contour: value array does not match axis counts");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(
                "extract_zero_contour: field values must be finite");
        }
    }

    const auto at = [&](int i1, int i2) {
        return values[static_cast<std::size_t>(i1) * n2 + i2];
    };
    const auto x_of = [&](int i1) { return axis1.value(i1); };
    const auto y_of = [&](int i2) { return axis2.value(i2); };

    // Refined crossing points live on grid edges; each crossed edge gets one
    // point shared by the (up to two) cells that border it.
    std::vector<Point> points;
    // h_id[i1][i2]: edge from node (i1,i2) to (i1+1,i2), varying axis1.
    std::vector<int> h_id(static_cast<std::size_t>(n1 - 1) * n2, -1);
    // v_id[i1][i2]: edge from node (i1,i2) to (i1,i2+1), varying axis2.
    std::vector<int> v_id(static_cast<std::size_t>(n1) * (n2 - 1), -1);
    const auto h_index = [&](int i1, int i2) {
        return static_cast<std::size_t>(i1) * n2 + i2;
    };
    const auto v_index = [&](int i1, int i2) {
        return static_cast<std::size_t>(i1) * (n2 - 1) + i2;
    };

    for (int i1 = 0; i1 + 1 < n1; ++i1) {
        for (int i2 = 0; i2 < n2; ++i2) {
            const double fa = at(i1, i2), fb = at(i1 + 1, i2);
            if (sign_of(fa) != sign_of(fb)) {
                h_id[h_index(i1, i2)] = static_cast<int>(points.size());
                points.push_back(refine_crossing(x_of(i1), y_of(i2), fa,
                                                 x_of(i1 + 1), y_of(i2), fb, f,
                                                 tol));
            }
        }
    }
    for (int i1 = 0; i1 < n1; ++i1) {
        for (int i2 = 0; i2 + 1 < n2; ++i2) {
            const double fa = at(i1, i2), fb = at(i1, i2 + 1);
            if (sign_of(fa) != sign_of(fb)) {
                v_id[v_index(i1, i2)] = static_cast<int>(points.size());
                points.push_back(refine_crossing(x_of(i1), y_of(i2), fa,
                                                 x_of(i1), y_of(i2 + 1), fb, f,
                                                 tol));
            }
        }
    }

    // March the cells, emitting segments between edge crossings. Adjacency
    // is kept per point; each edge point borders at most two segments.
    std::vector<std::array<int, 2>> nbr(points.size(), {-1, -1});
    const auto link = [&](int a, int b) {
        for (int* slot : {&nbr[a][0], &nbr[a][1]}) {
            if (*slot == -1) {
                *slot = b;
                break;
            }
        }
        for (int* slot : {&nbr[b][0], &nbr[b][1]}) {
            if (*slot == -1) {
                *slot = a;
                break;
            }
        }
    };

    for (int i1 = 0; i1 + 1 < n1; ++i1) {
        for (int i2 = 0; i2 + 1 < n2; ++i2) {
            const int bottom = h_id[h_index(i1, i2)];
            const int top = h_id[h_index(i1, i2 + 1)];
            const int left = v_id[v_index(i1, i2)];
            const int right = v_id[v_index(i1 + 1, i2)];

            const bool p00 = sign_of(at(i1, i2)) > 0;
            const bool p10 = sign_of(at(i1 + 1, i2)) > 0;
            const bool p11 = sign_of(at(i1 + 1, i2 + 1)) > 0;
            const bool p01 = sign_of(at(i1, i2 + 1)) > 0;
            const int code = (p00 ? 1 : 0) | (p10 ? 2 : 0) | (p11 ? 4 : 0) |
                             (p01 ? 8 : 0);

            switch (code) {
                case 0:
                case 15:
                    break;
                case 1:
                case 14:
                    link(bottom, left);
                    break;
                case 2:
                case 13:
                    link(bottom, right);
                    break;
                case 3:
                case 12:
                    link(left, right);
                    break;
                case 4:
                case 11:
                    link(top, right);
                    break;
                case 6:
                case 9:
                    link(bottom, top);
                    break;
                case 7:
                case 8:
                    link(top, left);
                    break;
                case 5:
                case 10: {
                    // Saddle: both diagonals change sign. The sign of f at
                    // the cell center decides which corner pairs the contour
                    // separates.
                    const double cx = 0.5 * (x_of(i1) + x_of(i1 + 1));
                    const double cy = 0.5 * (y_of(i2) + y_of(i2 + 1));
                    const bool center_positive = sign_of(f(cx, cy)) > 0;
                    const bool connect_low =  // bottom-left with left edge
                        (code == 5) ? !center_positive : center_positive;
                    if (connect_low) {
                        link(bottom, left);
                        link(top, right);
                    } else {
                        link(bottom, right);
                        link(top, left);
                    }
                    break;
                }
                default:
                    break;
            }
        }
    }

    // Stitch: open chains first (endpoints have one neighbor), then loops.
    std::vector<Polyline> result;
    std::vector<bool> visited(points.size(), false);
    const auto walk = [&](int start) {
        Polyline line;
        int prev = -1;
        int cur = start;
        while (cur != -1 && !visited[cur]) {
            visited[cur] = true;
            line.push_back({points[cur].x, points[cur].y});
            const int a = nbr[cur][0];
            const int b = nbr[cur][1];
            const int next = (a != prev && a != -1) ? a : b;
            prev = cur;
            cur = (next == prev) ? -1 : next;
        }
        if (cur == start && start != -1 && line.size() > 2) {
            line.push_back({points[start].x, points[start].y});
        }
        return line;
    };

    for (std::size_t i = 0; i < points.size(); ++i) {
        const bool endpoint = nbr[i][0] == -1 || nbr[i][1] == -1;
        if (endpoint && !visited[i]) {
            result.push_back(walk(static_cast<int>(i)));
        }
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!visited[i]) {
            result.push_back(walk(static_cast<int>(i)));
        }
    }
    return result;
}

CrossingLocus crossing_locus_grid(const Grid2D& field) {
    if (field.quantity != Quantity::Gap) {
        throw std::invalid_argument(
            "crossing_locus_grid: field must hold the gap quantity");
    }

    Params base;
    for (const auto& [name, value] : field.fixed) {
        Params scratch = base;
        if (apply_axis_value(scratch, name, value)) {
            base = scratch;
        }
    }
    const Axis ax1 = field.axis1;
    const Axis ax2 = field.axis2;
    const FieldFunction gap_at = [&base, &ax1, &ax2](double x1, double x2) {
        Params p = base;
        apply_axis_value(p, ax1.name, x1);
        apply_axis_value(p, ax2.name, x2);
        return energy_gap(p);
    };

    CrossingLocus locus;
    locus.axis1 = field.axis1.name;
    locus.axis2 = field.axis2.name;
    locus.polylines =
        extract_zero_contour(field.values, field.axis1, field.axis2, gap_at,
                             1e-9);
    return locus;
}

}  // namespace qxy
