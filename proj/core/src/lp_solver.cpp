#include "ccmdp/lp_solver.hpp"

#include "ccmdp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace ccmdp {

const char* to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    }
    return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarState : std::uint8_t { AtLower, AtUpper, Free, Basic, Fixed };

// Internal equality standard form: structural columns followed by one slack
// per inequality row. Rows are the equality rows followed by the inequality
// rows of the source problem.
struct Standard {
    int m = 0;
    int n = 0;
    int structural = 0;
    std::vector<std::vector<std::pair<int, double>>> cols; // per column: (row, value)
    std::vector<double> lower, upper, cost, rhs;
};

Standard to_standard(const LpProblem& p) {
    const int ne = static_cast<int>(p.eq_rhs.size());
    const int ni = static_cast<int>(p.ineq_rhs.size());
    Standard s;
    s.m = ne + ni;
    s.structural = p.num_vars;
    s.n = p.num_vars + ni;
    s.cols.resize(s.n);
    s.lower.assign(s.n, 0.0);
    s.upper.assign(s.n, kInf);
    s.cost.assign(s.n, 0.0);
    s.rhs.resize(s.m);

    for (int j = 0; j < p.num_vars; ++j) {
        s.lower[j] = p.lower[j];
        s.upper[j] = p.upper[j];
        s.cost[j] = p.objective[j];
    }
    for (const auto& e : p.equalities) s.cols[e.col].push_back({e.row, e.value});
    for (const auto& e : p.inequalities) s.cols[e.col].push_back({ne + e.row, e.value});
    for (int i = 0; i < ni; ++i) s.cols[p.num_vars + i].push_back({ne + i, 1.0});
    for (int i = 0; i < ne; ++i) s.rhs[i] = p.eq_rhs[i];
    for (int i = 0; i < ni; ++i) s.rhs[ne + i] = p.ineq_rhs[i];

    // merge duplicate (row, col) triplets so columns have unique row entries
    for (auto& col : s.cols) {
        std::sort(col.begin(), col.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::size_t out = 0;
        for (std::size_t k = 0; k < col.size(); ++k) {
            if (out > 0 && col[out - 1].first == col[k].first)
                col[out - 1].second += col[k].second;
            else
                col[out++] = col[k];
        }
        col.resize(out);
        std::erase_if(col, [](const auto& e) { return e.second == 0.0; });
    }
    return s;
}

struct PresolveResult {
    bool infeasible = false;
    bool unbounded = false;
    int conflict_row = -1;   // standard-form row proving infeasibility
    int unbounded_col = -1;  // standard-form column giving a free improving ray
    std::vector<char> row_active;
    std::vector<char> col_fixed;
    std::vector<double> fixed_value;
    std::vector<double> rhs_adjusted;
};

// Iterated bound propagation: empty rows, singleton rows, and forcing rows
// (activity bounds meeting the rhs) fix variables and drop rows. This strips
// the structurally-zero occupation variables of unreachable states.
PresolveResult presolve(const Standard& s, double feas_tol) {
    PresolveResult r;
    r.row_active.assign(s.m, 1);
    r.col_fixed.assign(s.n, 0);
    r.fixed_value.assign(s.n, 0.0);
    r.rhs_adjusted = s.rhs;

    std::vector<std::vector<std::pair<int, double>>> rows(s.m);
    for (int j = 0; j < s.n; ++j)
        for (const auto& [i, v] : s.cols[j]) rows[i].push_back({j, v});

    auto fix = [&](int j, double value) {
        r.col_fixed[j] = 1;
        r.fixed_value[j] = value;
        if (value != 0.0)
            for (const auto& [i, v] : s.cols[j]) r.rhs_adjusted[i] -= v * value;
    };

    for (int j = 0; j < s.n; ++j)
        if (s.lower[j] == s.upper[j]) fix(j, s.lower[j]);

    const double force_tol = 1e-12;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < s.m; ++i) {
            if (!r.row_active[i]) continue;
            double minact = 0.0, maxact = 0.0;
            int live = 0, last_col = -1;
            double last_coef = 0.0;
            for (const auto& [j, v] : rows[i]) {
                if (r.col_fixed[j]) continue;
                ++live;
                last_col = j;
                last_coef = v;
                if (v > 0.0) {
                    minact += v * s.lower[j];
                    maxact += v * s.upper[j];
                } else {
                    minact += v * s.upper[j];
                    maxact += v * s.lower[j];
                }
            }
            const double b = r.rhs_adjusted[i];
            const double row_tol = feas_tol * (1.0 + std::fabs(b));
            if (live == 0) {
                if (std::fabs(b) > row_tol) {
                    r.infeasible = true;
                    r.conflict_row = i;
                    return r;
                }
                r.row_active[i] = 0;
                changed = true;
                continue;
            }
            if (minact > b + row_tol || maxact < b - row_tol) {
                r.infeasible = true;
                r.conflict_row = i;
                return r;
            }
            if (live == 1) {
                const double v = b / last_coef;
                if (v < s.lower[last_col] - row_tol || v > s.upper[last_col] + row_tol) {
                    r.infeasible = true;
                    r.conflict_row = i;
                    return r;
                }
                fix(last_col, std::clamp(v, s.lower[last_col], s.upper[last_col]));
                r.row_active[i] = 0;
                changed = true;
                continue;
            }
            if (std::isfinite(minact) && std::fabs(minact - b) <= force_tol * (1.0 + std::fabs(b))) {
                for (const auto& [j, v] : rows[i])
                    if (!r.col_fixed[j]) fix(j, v > 0.0 ? s.lower[j] : s.upper[j]);
                r.row_active[i] = 0;
                changed = true;
                continue;
            }
            if (std::isfinite(maxact) && std::fabs(maxact - b) <= force_tol * (1.0 + std::fabs(b))) {
                for (const auto& [j, v] : rows[i])
                    if (!r.col_fixed[j]) fix(j, v > 0.0 ? s.upper[j] : s.lower[j]);
                r.row_active[i] = 0;
                changed = true;
                continue;
            }
        }
    }

    // Columns no longer touching any active row rest at the bound the
    // objective prefers. An infinite preferred bound is an improving ray,
    // but it only proves unboundedness once feasibility is established, so
    // the column stays live and the flag is acted on by the caller.
    for (int j = 0; j < s.n; ++j) {
        if (r.col_fixed[j]) continue;
        int live = 0;
        for (const auto& [i, v] : s.cols[j])
            if (r.row_active[i]) ++live;
        if (live > 0) continue;
        if (s.cost[j] > 0.0) {
            if (s.upper[j] == kInf) {
                r.unbounded = true;
                if (r.unbounded_col < 0) r.unbounded_col = j;
                continue;
            }
            fix(j, s.upper[j]);
        } else if (s.cost[j] < 0.0) {
            if (s.lower[j] == -kInf) {
                r.unbounded = true;
                if (r.unbounded_col < 0) r.unbounded_col = j;
                continue;
            }
            fix(j, s.lower[j]);
        } else {
            fix(j, std::isfinite(s.lower[j]) ? s.lower[j]
                                             : (std::isfinite(s.upper[j]) ? s.upper[j] : 0.0));
        }
    }
    return r;
}

// Dense row-major basis inverse with explicit-inverse pivot updates and
// periodic Gauss-Jordan refactorization.
class Simplex {
public:
    Simplex(const Standard& s, std::vector<int> cols, std::vector<int> rows,
            const SolverOptions& options)
        : s_(s), cols_(std::move(cols)), rows_(std::move(rows)), options_(options) {
        m_ = static_cast<int>(rows_.size());
        n_ = static_cast<int>(cols_.size());
        row_pos_.assign(s_.m, -1);
        for (int i = 0; i < m_; ++i) row_pos_[rows_[i]] = i;

        // reduced sparse columns and bounds
        rcols_.resize(n_);
        lower_.resize(n_);
        upper_.resize(n_);
        for (int jj = 0; jj < n_; ++jj) {
            const int j = cols_[jj];
            lower_[jj] = s_.lower[j];
            upper_[jj] = s_.upper[j];
            for (const auto& [i, v] : s_.cols[j])
                if (row_pos_[i] >= 0) rcols_[jj].push_back({row_pos_[i], v});
        }
        rhs_.resize(m_);
    }

    // total columns including the m artificials appended after the reduced ones
    int total_cols() const { return n_ + m_; }

    SolveStatus run(const std::vector<double>& rhs, const std::vector<double>& cost2,
                    long& iterations) {
        rhs_ = rhs;
        state_.assign(total_cols(), VarState::AtLower);
        for (int jj = 0; jj < n_; ++jj) {
            if (lower_[jj] == upper_[jj]) {
                state_[jj] = VarState::Fixed;
            } else if (std::isfinite(lower_[jj])) {
                state_[jj] = VarState::AtLower;
            } else if (std::isfinite(upper_[jj])) {
                state_[jj] = VarState::AtUpper;
            } else {
                state_[jj] = VarState::Free;
            }
        }

        // residual of nonbasic rest values determines the artificial signs
        std::vector<double> resid = rhs_;
        for (int jj = 0; jj < n_; ++jj) {
            const double v = rest_value(jj);
            if (v != 0.0)
                for (const auto& [i, a] : rcols_[jj]) resid[i] -= a * v;
        }
        art_sign_.resize(m_);
        basic_.resize(m_);
        in_row_.assign(total_cols(), -1);
        xb_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            art_sign_[i] = resid[i] < 0.0 ? -1.0 : 1.0;
            const int art = n_ + i;
            basic_[i] = art;
            in_row_[art] = i;
            state_[art] = VarState::Basic;
            xb_[i] = std::fabs(resid[i]);
        }
        art_lower_.assign(m_, 0.0);
        art_upper_.assign(m_, kInf);

        binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i) binv_[idx(i, i)] = art_sign_[i];

        // phase 1: maximize -(sum of artificials)
        cost_.assign(total_cols(), 0.0);
        for (int i = 0; i < m_; ++i) cost_[n_ + i] = -1.0;
        const SolveStatus s1 = iterate(iterations);
        // phase 1 maximizes a function bounded by zero, so an unbounded ray
        // here can only be a numerical failure
        if (s1 == SolveStatus::Unbounded)
            throw std::runtime_error("lp_solver: phase 1 escaped its bound");

        double art_sum = 0.0;
        for (int i = 0; i < m_; ++i)
            if (basic_[i] >= n_) art_sum += std::max(xb_[i], 0.0);
        double bscale = 1.0;
        for (double b : rhs_) bscale = std::max(bscale, std::fabs(b));
        if (art_sum > options_.feasibility_tol * bscale * std::max(1, m_))
            return SolveStatus::Infeasible;

        // phase 2: pin artificials to zero and switch costs
        for (int i = 0; i < m_; ++i) art_upper_[i] = 0.0;
        for (int jj = 0; jj < total_cols(); ++jj) cost_[jj] = jj < n_ ? cost2[cols_[jj]] : 0.0;
        return iterate(iterations);
    }

    // final values of the reduced columns
    std::vector<double> reduced_values() const {
        std::vector<double> x(n_);
        for (int jj = 0; jj < n_; ++jj)
            x[jj] = state_[jj] == VarState::Basic ? xb_[in_row_[jj]] : rest_value(jj);
        return x;
    }

    // duals of the last phase (for Farkas certificates)
    std::vector<double> duals() const {
        std::vector<double> y(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            const double cb = cost_[basic_[i]];
            if (cb == 0.0) continue;
            const double* row = &binv_[idx(i, 0)];
            for (int k = 0; k < m_; ++k) y[k] += cb * row[k];
        }
        return y;
    }

    // improving ray mapped back to standard-form columns: (column, coefficient)
    std::vector<std::pair<int, double>> unbounded_ray() const {
        std::vector<std::pair<int, double>> ray;
        if (ray_.entering < 0) return ray;
        if (ray_.entering < n_) ray.push_back({cols_[ray_.entering], ray_.direction});
        for (int i = 0; i < m_; ++i) {
            const double v = -ray_.direction * ray_.w[i];
            if (std::fabs(v) < 1e-12) continue;
            const int bj = basic_[i];
            if (bj < n_) ray.push_back({cols_[bj], v});
        }
        return ray;
    }

private:
    std::size_t idx(int i, int k) const { return static_cast<std::size_t>(i) * m_ + k; }

    double col_lower(int jj) const { return jj < n_ ? lower_[jj] : art_lower_[jj - n_]; }
    double col_upper(int jj) const { return jj < n_ ? upper_[jj] : art_upper_[jj - n_]; }

    double rest_value(int jj) const {
        switch (state_[jj]) {
        case VarState::AtLower: return col_lower(jj);
        case VarState::AtUpper: return col_upper(jj);
        case VarState::Fixed: return col_lower(jj);
        case VarState::Free: return 0.0;
        case VarState::Basic: break;
        }
        return 0.0;
    }

    void ftran(int jj, std::vector<double>& w) const {
        std::fill(w.begin(), w.end(), 0.0);
        if (jj >= n_) {
            const int i = jj - n_;
            const double sign = art_sign_[i];
            for (int k = 0; k < m_; ++k) w[k] = sign * binv_[idx(k, i)];
            return;
        }
        for (const auto& [i, v] : rcols_[jj])
            for (int k = 0; k < m_; ++k) w[k] += v * binv_[idx(k, i)];
    }

    double reduced_cost(int jj, const std::vector<double>& y) const {
        double d = cost_[jj];
        if (jj >= n_) {
            d -= art_sign_[jj - n_] * y[jj - n_];
        } else {
            for (const auto& [i, v] : rcols_[jj]) d -= y[i] * v;
        }
        return d;
    }

    void refactor() {
        // rebuild B^-1 by Gauss-Jordan with partial pivoting
        std::vector<double> B(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            const int jj = basic_[i];
            if (jj >= n_) {
                const int row = jj - n_;
                B[idx(row, i)] = art_sign_[row];
            } else {
                for (const auto& [r, v] : rcols_[jj]) B[idx(r, i)] += v;
            }
        }
        std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i) inv[idx(i, i)] = 1.0;
        for (int k = 0; k < m_; ++k) {
            int piv = k;
            double best = std::fabs(B[idx(k, k)]);
            for (int i = k + 1; i < m_; ++i) {
                const double v = std::fabs(B[idx(i, k)]);
                if (v > best) {
                    best = v;
                    piv = i;
                }
            }
            if (best < 1e-13) throw std::runtime_error("lp_solver: basis matrix is numerically singular");
            if (piv != k) {
                for (int c = 0; c < m_; ++c) {
                    std::swap(B[idx(piv, c)], B[idx(k, c)]);
                    std::swap(inv[idx(piv, c)], inv[idx(k, c)]);
                }
            }
            const double invpiv = 1.0 / B[idx(k, k)];
            for (int c = 0; c < m_; ++c) {
                B[idx(k, c)] *= invpiv;
                inv[idx(k, c)] *= invpiv;
            }
            for (int i = 0; i < m_; ++i) {
                if (i == k) continue;
                const double f = B[idx(i, k)];
                if (f == 0.0) continue;
                for (int c = 0; c < m_; ++c) {
                    B[idx(i, c)] -= f * B[idx(k, c)];
                    inv[idx(i, c)] -= f * inv[idx(k, c)];
                }
            }
        }
        binv_ = std::move(inv);
        recompute_xb();
        since_refactor_ = 0;
    }

    void recompute_xb() {
        std::vector<double> r = rhs_;
        for (int jj = 0; jj < n_; ++jj) {
            if (state_[jj] == VarState::Basic) continue;
            const double v = rest_value(jj);
            if (v != 0.0)
                for (const auto& [i, a] : rcols_[jj]) r[i] -= a * v;
        }
        for (int i = 0; i < m_; ++i) {
            const double* row = &binv_[idx(i, 0)];
            double sum = 0.0;
            for (int k = 0; k < m_; ++k) sum += row[k] * r[k];
            xb_[i] = sum;
        }
    }

    // entering column by Dantzig (Bland when stalled); returns -1 if optimal
    int choose_entering(const std::vector<double>& y, bool bland, double dual_tol,
                        double& direction) const {
        int best = -1;
        double best_score = dual_tol;
        double best_dir = 0.0;
        for (int jj = 0; jj < total_cols(); ++jj) {
            const VarState st = state_[jj];
            if (st == VarState::Basic || st == VarState::Fixed) continue;
            if (jj >= n_ && art_upper_[jj - n_] == 0.0) continue; // pinned artificial
            const double d = reduced_cost(jj, y);
            double score = 0.0, dir = 0.0;
            if (st == VarState::AtLower && d > dual_tol) {
                score = d;
                dir = 1.0;
            } else if (st == VarState::AtUpper && d < -dual_tol) {
                score = -d;
                dir = -1.0;
            } else if (st == VarState::Free && std::fabs(d) > dual_tol) {
                score = std::fabs(d);
                dir = d > 0.0 ? 1.0 : -1.0;
            } else {
                continue;
            }
            if (bland) {
                direction = dir;
                return jj; // lowest index wins
            }
            if (score > best_score) {
                best_score = score;
                best = jj;
                best_dir = dir;
            }
        }
        direction = best_dir;
        return best;
    }

    SolveStatus iterate(long& iterations) {
        refactor();
        std::vector<double> y(m_), w(m_);
        bool bland = false;
        int degenerate_run = 0;

        while (true) {
            if (iterations >= options_.max_iterations)
                throw ResourceLimitError("lp_solver: iteration limit exceeded");

            // duals for the current phase costs
            std::fill(y.begin(), y.end(), 0.0);
            for (int i = 0; i < m_; ++i) {
                const double cb = cost_[basic_[i]];
                if (cb == 0.0) continue;
                const double* row = &binv_[idx(i, 0)];
                for (int k = 0; k < m_; ++k) y[k] += cb * row[k];
            }
            double cscale = 1.0;
            for (int jj = 0; jj < total_cols(); ++jj) cscale = std::max(cscale, std::fabs(cost_[jj]));
            const double dual_tol = options_.optimality_tol * cscale;

            double direction = 0.0;
            int enter = choose_entering(y, bland, dual_tol, direction);
            if (enter < 0) {
                if (since_refactor_ > 0) {
                    refactor(); // confirm optimality on a fresh factorization
                    std::fill(y.begin(), y.end(), 0.0);
                    for (int i = 0; i < m_; ++i) {
                        const double cb = cost_[basic_[i]];
                        if (cb == 0.0) continue;
                        const double* row = &binv_[idx(i, 0)];
                        for (int k = 0; k < m_; ++k) y[k] += cb * row[k];
                    }
                    enter = choose_entering(y, bland, dual_tol, direction);
                    if (enter < 0) return SolveStatus::Optimal;
                } else {
                    return SolveStatus::Optimal;
                }
            }

            ftran(enter, w);

            // ratio test over the basic variables plus the entering bound flip
            const double piv_tol = 1e-11;
            double theta = kInf;
            bool flip = true;
            const double range = col_upper(enter) - col_lower(enter);
            if (std::isfinite(range)) theta = range;

            int leave_row = -1;
            bool leave_to_upper = false;
            double leave_piv = 0.0;
            for (int i = 0; i < m_; ++i) {
                const double v = direction * w[i];
                if (std::fabs(v) <= piv_tol) continue;
                const int bj = basic_[i];
                double cand;
                bool to_upper;
                if (v > 0.0) {
                    const double lb = col_lower(bj);
                    if (lb == -kInf) continue;
                    cand = (xb_[i] - lb) / v;
                    to_upper = false;
                } else {
                    const double ub = col_upper(bj);
                    if (ub == kInf) continue;
                    cand = (xb_[i] - ub) / v;
                    to_upper = true;
                }
                if (cand < 0.0) cand = 0.0; // tolerate slight infeasibility drift
                const bool better =
                    cand < theta - 1e-12 ||
                    (cand < theta + 1e-12 &&
                     (leave_row < 0 ||
                      (bland ? basic_[i] < basic_[leave_row]
                             : std::fabs(w[i]) > std::fabs(leave_piv) + 1e-15)));
                if (better) {
                    theta = std::min(theta, cand);
                    leave_row = i;
                    leave_to_upper = to_upper;
                    leave_piv = w[i];
                    flip = false;
                }
            }
            if (flip && !std::isfinite(theta)) {
                ray_.entering = enter;
                ray_.direction = direction;
                ray_.w = w;
                return SolveStatus::Unbounded;
            }

            ++iterations;
            ++since_refactor_;
            if (theta <= 1e-11) {
                if (++degenerate_run >= 150) bland = true;
            } else {
                degenerate_run = 0;
                bland = false;
            }

            if (flip) {
                // nonbasic bound flip, no basis change
                for (int i = 0; i < m_; ++i) xb_[i] -= theta * direction * w[i];
                state_[enter] =
                    state_[enter] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
                continue;
            }

            // pivot: entering takes row leave_row
            const int leaving = basic_[leave_row];
            const double enter_from = rest_value(enter);
            for (int i = 0; i < m_; ++i) {
                if (i == leave_row) continue;
                xb_[i] -= theta * direction * w[i];
            }

            const double pivot = w[leave_row];
            double* prow = &binv_[idx(leave_row, 0)];
            const double invpiv = 1.0 / pivot;
            for (int k = 0; k < m_; ++k) prow[k] *= invpiv;
            for (int i = 0; i < m_; ++i) {
                if (i == leave_row) continue;
                const double f = w[i];
                if (std::fabs(f) < 1e-15) continue;
                double* row = &binv_[idx(i, 0)];
                for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
            }

            basic_[leave_row] = enter;
            in_row_[enter] = leave_row;
            state_[enter] = VarState::Basic;
            xb_[leave_row] = enter_from + direction * theta;
            in_row_[leaving] = -1;
            state_[leaving] = leave_to_upper ? VarState::AtUpper : VarState::AtLower;
            if (col_lower(leaving) == col_upper(leaving)) state_[leaving] = VarState::Fixed;

            if (since_refactor_ >= options_.refactor_interval) refactor();
        }
    }

    const Standard& s_;
    std::vector<int> cols_, rows_;
    SolverOptions options_;
    int m_ = 0, n_ = 0;
    std::vector<int> row_pos_;
    std::vector<std::vector<std::pair<int, double>>> rcols_;
    std::vector<double> lower_, upper_, rhs_;
    std::vector<double> cost_;
    std::vector<double> art_sign_, art_lower_, art_upper_;
    std::vector<int> basic_, in_row_;
    std::vector<double> xb_;
    std::vector<double> binv_;
    std::vector<VarState> state_;
    struct Ray {
        int entering = -1;
        double direction = 0.0;
        std::vector<double> w;
    };
    Ray ray_;
    int since_refactor_ = 0;
};

} // namespace

LpSolution solve(const LpProblem& problem, const SolverOptions& options) {
    // reject degenerate numerics up front
    auto check_finite = [](const std::vector<double>& v, const char* what) {
        for (double x : v)
            if (std::isnan(x) || std::isinf(x))
                throw InputError(std::string("lp_solver: non-finite coefficient in ") + what);
    };
    check_finite(problem.objective, "objective");
    check_finite(problem.eq_rhs, "eq_rhs");
    check_finite(problem.ineq_rhs, "ineq_rhs");
    for (const auto& e : problem.equalities)
        if (!std::isfinite(e.value)) throw InputError("lp_solver: non-finite equality coefficient");
    for (const auto& e : problem.inequalities)
        if (!std::isfinite(e.value)) throw InputError("lp_solver: non-finite inequality coefficient");
    for (double v : problem.lower)
        if (std::isnan(v)) throw InputError("lp_solver: NaN lower bound");
    for (double v : problem.upper)
        if (std::isnan(v)) throw InputError("lp_solver: NaN upper bound");
    if (static_cast<int>(problem.lower.size()) != problem.num_vars ||
        static_cast<int>(problem.upper.size()) != problem.num_vars ||
        static_cast<int>(problem.objective.size()) != problem.num_vars)
        throw InputError("lp_solver: bounds/objective sizes do not match num_vars");

    const Standard s = to_standard(problem);

    LpSolution sol;
    for (int j = 0; j < s.n; ++j) {
        if (s.lower[j] > s.upper[j] + options.feasibility_tol) {
            sol.status = SolveStatus::Infeasible;
            sol.certificate_gap = s.lower[j] - s.upper[j];
            return sol;
        }
    }

    PresolveResult pre = presolve(s, options.feasibility_tol);

    // On presolve infeasibility, rerun without the reductions: phase 1 then
    // produces a genuine row-combination certificate.
    std::vector<int> live_cols, live_rows;
    std::vector<double> reduced_rhs;
    std::vector<double> full_values(s.n, 0.0);
    if (pre.infeasible) {
        for (int j = 0; j < s.n; ++j) live_cols.push_back(j);
        for (int i = 0; i < s.m; ++i) live_rows.push_back(i);
        reduced_rhs = s.rhs;
    } else {
        for (int j = 0; j < s.n; ++j)
            if (!pre.col_fixed[j]) live_cols.push_back(j);
        for (int i = 0; i < s.m; ++i)
            if (pre.row_active[i]) live_rows.push_back(i);
        for (int j = 0; j < s.n; ++j)
            if (pre.col_fixed[j]) full_values[j] = pre.fixed_value[j];
        reduced_rhs.reserve(live_rows.size());
        for (int i : live_rows) reduced_rhs.push_back(pre.rhs_adjusted[i]);
    }

    // with no rows left, feasibility is settled and a flagged improving ray
    // is conclusive
    if (live_rows.empty() && pre.unbounded) {
        sol.status = SolveStatus::Unbounded;
        sol.certificate.assign(problem.num_vars, 0.0);
        if (pre.unbounded_col < s.structural)
            sol.certificate[pre.unbounded_col] = s.cost[pre.unbounded_col] > 0.0 ? 1.0 : -1.0;
        return sol;
    }

    long iterations = 0;
    if (!live_rows.empty()) {
        Simplex simplex(s, live_cols, live_rows, options);
        const SolveStatus status = simplex.run(reduced_rhs, s.cost, iterations);
        sol.iterations = iterations;

        if (status == SolveStatus::Infeasible) {
            sol.status = SolveStatus::Infeasible;
            const std::vector<double> y = simplex.duals();
            sol.certificate.assign(s.m, 0.0);
            for (std::size_t k = 0; k < live_rows.size(); ++k) sol.certificate[live_rows[k]] = y[k];
            // attainable range of y.Ax over the box vs y.b
            double lo = 0.0, hi = 0.0, yb = 0.0;
            for (int i = 0; i < s.m; ++i) yb += sol.certificate[i] * s.rhs[i];
            for (int j = 0; j < s.n; ++j) {
                double t = 0.0;
                for (const auto& [i, v] : s.cols[j]) t += sol.certificate[i] * v;
                if (t > 0.0) {
                    lo += t * s.lower[j];
                    hi += t * s.upper[j];
                } else if (t < 0.0) {
                    lo += t * s.upper[j];
                    hi += t * s.lower[j];
                }
            }
            sol.certificate_gap = std::max(lo - yb, yb - hi);
            return sol;
        }
        if (status == SolveStatus::Unbounded) {
            sol.status = SolveStatus::Unbounded;
            sol.certificate.assign(problem.num_vars, 0.0);
            for (const auto& [col, v] : simplex.unbounded_ray())
                if (col < s.structural) sol.certificate[col] = v;
            return sol;
        }

        const std::vector<double> reduced = simplex.reduced_values();
        for (std::size_t k = 0; k < live_cols.size(); ++k) full_values[live_cols[k]] = reduced[k];
    }

    sol.status = SolveStatus::Optimal;
    sol.iterations = iterations;
    sol.values.assign(full_values.begin(), full_values.begin() + problem.num_vars);
    sol.objective = lp_objective(problem, sol.values);
    const LpPointCheck check = check_lp_point(problem, sol.values);
    sol.max_primal_residual = std::max({check.max_eq_residual, check.max_ineq_violation,
                                        check.max_bound_violation});
    return sol;
}

} // namespace ccmdp
