#include "ccmdp/lp_problem.hpp"

#include "ccmdp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ccmdp {

LpPointCheck check_lp_point(const LpProblem& problem, const std::vector<double>& values) {
    if (static_cast<int>(values.size()) != problem.num_vars)
        throw InputError("point dimension does not match the LP");

    LpPointCheck check;
    std::vector<double> acc(problem.eq_rhs.size(), 0.0);
    for (const auto& e : problem.equalities) acc[e.row] += e.value * values[e.col];
    for (std::size_t i = 0; i < acc.size(); ++i)
        check.max_eq_residual = std::max(check.max_eq_residual, std::fabs(acc[i] - problem.eq_rhs[i]));

    acc.assign(problem.ineq_rhs.size(), 0.0);
    for (const auto& e : problem.inequalities) acc[e.row] += e.value * values[e.col];
    for (std::size_t i = 0; i < acc.size(); ++i)
        check.max_ineq_violation = std::max(check.max_ineq_violation, acc[i] - problem.ineq_rhs[i]);
    check.max_ineq_violation = std::max(check.max_ineq_violation, 0.0);

    for (int j = 0; j < problem.num_vars; ++j) {
        check.max_bound_violation = std::max(check.max_bound_violation, problem.lower[j] - values[j]);
        check.max_bound_violation = std::max(check.max_bound_violation, values[j] - problem.upper[j]);
    }
    check.max_bound_violation = std::max(check.max_bound_violation, 0.0);
    return check;
}

double lp_objective(const LpProblem& problem, const std::vector<double>& values) {
    double sum = 0.0;
    for (int j = 0; j < problem.num_vars; ++j) sum += problem.objective[j] * values[j];
    return sum;
}

namespace {

void print_value(std::ostream& os, double v) {
    if (v == std::numeric_limits<double>::infinity()) {
        os << "inf";
    } else if (v == -std::numeric_limits<double>::infinity()) {
        os << "-inf";
    } else {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << buf;
    }
}

int read_int(const std::string& token, int line_no) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(token, &pos);
        if (pos != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw InputError("lp text: bad index '" + token + "' at line " + std::to_string(line_no));
    }
}

double read_value(const std::string& token, int line_no) {
    if (token == "inf") return std::numeric_limits<double>::infinity();
    if (token == "-inf") return -std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        if (pos != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw InputError("lp text: bad number '" + token + "' at line " + std::to_string(line_no));
    }
}

} // namespace

std::string write_lp_text(const LpProblem& problem) {
    const int num_eq = static_cast<int>(problem.eq_rhs.size());
    const int num_ineq = static_cast<int>(problem.ineq_rhs.size());

    std::ostringstream os;
    os << "ccmdp-lp 1\n";
    os << "dims " << problem.num_vars << " " << num_eq << " " << num_ineq << "\n";

    os << "objective\n";
    for (int j = 0; j < problem.num_vars; ++j) {
        if (problem.objective[j] == 0.0) continue;
        os << j << " ";
        print_value(os, problem.objective[j]);
        os << "\n";
    }
    os << "equalities\n";
    for (const auto& e : problem.equalities) {
        os << e.row << " " << e.col << " ";
        print_value(os, e.value);
        os << "\n";
    }
    os << "eq_rhs\n";
    for (int i = 0; i < num_eq; ++i) {
        if (problem.eq_rhs[i] == 0.0) continue;
        os << i << " ";
        print_value(os, problem.eq_rhs[i]);
        os << "\n";
    }
    os << "inequalities\n";
    for (const auto& e : problem.inequalities) {
        os << e.row << " " << e.col << " ";
        print_value(os, e.value);
        os << "\n";
    }
    os << "ineq_rhs\n";
    for (int i = 0; i < num_ineq; ++i) {
        if (problem.ineq_rhs[i] == 0.0) continue;
        os << i << " ";
        print_value(os, problem.ineq_rhs[i]);
        os << "\n";
    }
    os << "bounds\n";
    for (int j = 0; j < problem.num_vars; ++j) {
        if (problem.lower[j] == 0.0 && problem.upper[j] == 1.0) continue;
        os << j << " ";
        print_value(os, problem.lower[j]);
        os << " ";
        print_value(os, problem.upper[j]);
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

LpProblem parse_lp_text(std::istream& in) {
    LpProblem problem;
    int num_eq = -1, num_ineq = -1;
    enum class Section { None, Objective, Eq, EqRhs, Ineq, IneqRhs, Bounds, End };
    Section section = Section::None;

    std::string line;
    int line_no = 0;
    bool have_header = false, have_dims = false;

    auto check_col = [&](int col) {
        if (col < 0 || col >= problem.num_vars)
            throw InputError("lp text: column index out of range at line " + std::to_string(line_no));
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string first;
        ls >> first;

        if (!have_header) {
            int version = 0;
            if (first != "ccmdp-lp" || !(ls >> version) || version != 1)
                throw InputError("lp text: expected 'ccmdp-lp 1' header at line " + std::to_string(line_no));
            have_header = true;
            continue;
        }
        if (!have_dims) {
            if (first != "dims") throw InputError("lp text: expected 'dims' at line " + std::to_string(line_no));
            if (!(ls >> problem.num_vars >> num_eq >> num_ineq) || problem.num_vars < 0 || num_eq < 0 ||
                num_ineq < 0)
                throw InputError("lp text: bad dims at line " + std::to_string(line_no));
            problem.objective.assign(problem.num_vars, 0.0);
            problem.eq_rhs.assign(num_eq, 0.0);
            problem.ineq_rhs.assign(num_ineq, 0.0);
            problem.lower.assign(problem.num_vars, 0.0);
            problem.upper.assign(problem.num_vars, 1.0);
            have_dims = true;
            continue;
        }

        if (first == "objective") { section = Section::Objective; continue; }
        if (first == "equalities") { section = Section::Eq; continue; }
        if (first == "eq_rhs") { section = Section::EqRhs; continue; }
        if (first == "inequalities") { section = Section::Ineq; continue; }
        if (first == "ineq_rhs") { section = Section::IneqRhs; continue; }
        if (first == "bounds") { section = Section::Bounds; continue; }
        if (first == "end") { section = Section::End; break; }

        std::string s2, s3;
        switch (section) {
        case Section::Objective: {
            if (!(ls >> s2)) throw InputError("lp text: malformed objective line " + std::to_string(line_no));
            const int col = read_int(first, line_no);
            check_col(col);
            problem.objective[col] = read_value(s2, line_no);
            break;
        }
        case Section::Eq:
        case Section::Ineq: {
            if (!(ls >> s2 >> s3)) throw InputError("lp text: malformed matrix line " + std::to_string(line_no));
            SparseEntry e;
            e.row = read_int(first, line_no);
            e.col = read_int(s2, line_no);
            e.value = read_value(s3, line_no);
            check_col(e.col);
            const int num_rows = section == Section::Eq ? num_eq : num_ineq;
            if (e.row < 0 || e.row >= num_rows)
                throw InputError("lp text: row index out of range at line " + std::to_string(line_no));
            (section == Section::Eq ? problem.equalities : problem.inequalities).push_back(e);
            break;
        }
        case Section::EqRhs:
        case Section::IneqRhs: {
            if (!(ls >> s2)) throw InputError("lp text: malformed rhs line " + std::to_string(line_no));
            const int row = read_int(first, line_no);
            auto& rhs = section == Section::EqRhs ? problem.eq_rhs : problem.ineq_rhs;
            if (row < 0 || row >= static_cast<int>(rhs.size()))
                throw InputError("lp text: rhs row out of range at line " + std::to_string(line_no));
            rhs[row] = read_value(s2, line_no);
            break;
        }
        case Section::Bounds: {
            if (!(ls >> s2 >> s3)) throw InputError("lp text: malformed bounds line " + std::to_string(line_no));
            const int col = read_int(first, line_no);
            check_col(col);
            problem.lower[col] = read_value(s2, line_no);
            problem.upper[col] = read_value(s3, line_no);
            break;
        }
        default:
            throw InputError("lp text: content outside any section at line " + std::to_string(line_no));
        }
    }
    if (section != Section::End) throw InputError("lp text: missing 'end'");
    return problem;
}

LpProblem parse_lp_text(const std::string& text) {
    std::istringstream in(text);
    return parse_lp_text(in);
}

} // namespace ccmdp
