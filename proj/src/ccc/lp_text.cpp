#include "ccc/lp_text.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ccc {

namespace {

std::string fmt_num(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void render_terms(std::ostringstream& out, const std::vector<std::pair<int, double>>& terms,
                  const std::vector<std::string>& names) {
    bool first = true;
    for (const auto& [var, coef] : terms) {
        if (coef == 0.0) continue;
        const double mag = std::abs(coef);
        if (first) {
            if (coef < 0) out << "- ";
            first = false;
        } else {
            out << (coef < 0 ? " - " : " + ");
        }
        if (mag != 1.0) out << fmt_num(mag) << " ";
        out << names[var];
    }
    if (first) out << "0 " << names.at(0);
}

}  // namespace

bool GenericLp::equals(const GenericLp& other) const {
    if (var_names != other.var_names) return false;
    if (objective.size() != other.objective.size()) return false;
    if (objective != other.objective) return false;
    if (objective_constant != other.objective_constant) return false;
    if (upper != other.upper) return false;
    if (rows.size() != other.rows.size()) return false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].name != other.rows[i].name) return false;
        if (rows[i].entries != other.rows[i].entries) return false;
        if (rows[i].sense != other.rows[i].sense) return false;
        if (rows[i].rhs != other.rows[i].rhs) return false;
    }
    return true;
}

GenericLp to_generic(const LpModel& model) {
    GenericLp lp;
    const int nv = model.num_vars();
    lp.var_names.reserve(nv);
    for (int j = 0; j < nv; ++j) lp.var_names.push_back(model.var_name(j));
    lp.objective = model.objective;
    lp.objective_constant = model.objective_constant;
    lp.upper = Eigen::VectorXd::Ones(nv);
    lp.rows.reserve(model.rows.size());
    std::vector<std::pair<int, double>> entries;
    for (const LpRow& row : model.rows) {
        model.row_entries(row, entries);
        lp.rows.push_back({model.row_name(row), entries, model.row_sense(row),
                           model.row_rhs(row)});
    }
    return lp;
}

std::string render_lp_text(const GenericLp& lp) {
    std::ostringstream out;
    out << "\\ ccc lp export v1\n";
    if (lp.objective_constant != 0.0)
        out << "\\ objective constant: " << fmt_num(lp.objective_constant) << "\n";
    out << "Minimize\n obj: ";
    std::vector<std::pair<int, double>> obj_terms;
    for (long j = 0; j < lp.objective.size(); ++j)
        if (lp.objective(j) != 0.0) obj_terms.emplace_back(static_cast<int>(j), lp.objective(j));
    render_terms(out, obj_terms, lp.var_names);
    out << "\nSubject To\n";
    for (const GenericLp::Row& row : lp.rows) {
        out << " " << row.name << ": ";
        render_terms(out, row.entries, lp.var_names);
        switch (row.sense) {
            case lp::Sense::le: out << " <= "; break;
            case lp::Sense::ge: out << " >= "; break;
            case lp::Sense::eq: out << " = "; break;
        }
        out << fmt_num(row.rhs) << "\n";
    }
    out << "Bounds\n";
    for (std::size_t j = 0; j < lp.var_names.size(); ++j)
        out << " 0 <= " << lp.var_names[j] << " <= " << fmt_num(lp.upper(static_cast<long>(j)))
            << "\n";
    out << "End\n";
    return out.str();
}

std::string export_lp_text(const LpModel& model) { return render_lp_text(to_generic(model)); }

namespace {

struct Tokenizer {
    std::vector<std::string> tokens;
    std::size_t pos = 0;

    bool done() const { return pos >= tokens.size(); }
    const std::string& peek() const { return tokens[pos]; }
    std::string next() { return tokens[pos++]; }
};

bool is_number_start(const std::string& t) {
    return !t.empty() && (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '.');
}

// terms until a sense token, section keyword or end
void parse_terms(Tokenizer& tz, std::vector<std::pair<int, double>>& terms,
                 std::unordered_map<std::string, int>& var_ids,
                 std::vector<std::string>& var_names, bool allow_new_vars) {
    terms.clear();
    double sign = 1.0;
    bool have_sign = false;
    while (!tz.done()) {
        const std::string& t = tz.peek();
        if (t == "+" || t == "-") {
            sign = t == "-" ? -sign : sign;
            have_sign = true;
            tz.next();
            continue;
        }
        if (t == "<=" || t == ">=" || t == "=" || t == "Subject" || t == "Bounds" ||
            t == "End" || (!have_sign && !is_number_start(t) && t.find(':') != std::string::npos))
            break;
        double coef = 1.0;
        if (is_number_start(t)) {
            coef = std::stod(tz.next());
            if (tz.done()) {
                // bare constant at the end of a term list
                terms.emplace_back(-1, sign * coef);
                break;
            }
        }
        if (tz.done()) break;
        const std::string& maybe_name = tz.peek();
        if (maybe_name == "+" || maybe_name == "-" || maybe_name == "<=" || maybe_name == ">=" ||
            maybe_name == "=") {
            terms.emplace_back(-1, sign * coef);  // constant term
            sign = 1.0;
            have_sign = false;
            continue;
        }
        const std::string name = tz.next();
        auto it = var_ids.find(name);
        int id;
        if (it == var_ids.end()) {
            if (!allow_new_vars) throw std::invalid_argument("unknown variable '" + name + "'");
            id = static_cast<int>(var_names.size());
            var_ids.emplace(name, id);
            var_names.push_back(name);
        } else {
            id = it->second;
        }
        terms.emplace_back(id, sign * coef);
        sign = 1.0;
        have_sign = false;
    }
}

}  // namespace

GenericLp import_lp_text(const std::string& text) {
    GenericLp lp;
    Tokenizer tz;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '\\') {
            const std::string prefix = "\\ objective constant: ";
            if (line.rfind(prefix, 0) == 0)
                lp.objective_constant = std::stod(line.substr(prefix.size()));
            continue;
        }
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tz.tokens.push_back(tok);
    }

    std::unordered_map<std::string, int> var_ids;
    auto expect = [&](const std::string& want) {
        if (tz.done() || tz.next() != want)
            throw std::invalid_argument("lp text: expected '" + want + "'");
    };
    expect("Minimize");
    if (tz.done() || tz.peek().back() != ':')
        throw std::invalid_argument("lp text: missing objective label");
    tz.next();  // obj:

    std::vector<std::pair<int, double>> terms;
    parse_terms(tz, terms, var_ids, lp.var_names, true);
    std::vector<double> obj_coef;
    auto ensure = [&](std::size_t size) {
        if (obj_coef.size() < size) obj_coef.resize(size, 0.0);
    };
    for (const auto& [id, coef] : terms) {
        if (id < 0) {
            lp.objective_constant += coef;
        } else {
            ensure(id + 1);
            obj_coef[id] += coef;
        }
    }

    expect("Subject");
    expect("To");
    while (!tz.done() && tz.peek() != "Bounds" && tz.peek() != "End") {
        GenericLp::Row row;
        std::string label = tz.next();
        if (label.back() != ':') throw std::invalid_argument("lp text: row needs a label");
        row.name = label.substr(0, label.size() - 1);
        parse_terms(tz, row.entries, var_ids, lp.var_names, true);
        if (tz.done()) throw std::invalid_argument("lp text: row missing sense");
        const std::string sense = tz.next();
        if (sense == "<=") row.sense = lp::Sense::le;
        else if (sense == ">=") row.sense = lp::Sense::ge;
        else if (sense == "=") row.sense = lp::Sense::eq;
        else throw std::invalid_argument("lp text: bad sense '" + sense + "'");
        row.rhs = std::stod(tz.next());
        // fold constant terms into the rhs
        std::vector<std::pair<int, double>> cleaned;
        for (const auto& [id, coef] : row.entries) {
            if (id < 0) row.rhs -= coef;
            else cleaned.emplace_back(id, coef);
        }
        row.entries = std::move(cleaned);
        lp.rows.push_back(std::move(row));
    }

    const long nv = static_cast<long>(lp.var_names.size());
    lp.objective = Eigen::VectorXd::Zero(nv);
    for (std::size_t j = 0; j < obj_coef.size(); ++j)
        lp.objective(static_cast<long>(j)) = obj_coef[j];
    lp.upper = Eigen::VectorXd::Constant(nv, std::numeric_limits<double>::infinity());

    if (!tz.done() && tz.peek() == "Bounds") {
        tz.next();
        while (!tz.done() && tz.peek() != "End") {
            // form: lo <= name <= hi
            const double lo = std::stod(tz.next());
            expect("<=");
            const std::string name = tz.next();
            expect("<=");
            const double hi = std::stod(tz.next());
            if (lo != 0.0) throw std::invalid_argument("lp text: only zero lower bounds supported");
            auto it = var_ids.find(name);
            if (it == var_ids.end())
                throw std::invalid_argument("lp text: bound for unknown variable '" + name + "'");
            lp.upper(it->second) = hi;
        }
    }
    if (tz.done() || tz.next() != "End") throw std::invalid_argument("lp text: missing End");
    return lp;
}

GenericSolveResult solve_generic(const GenericLp& lp, long max_iterations) {
    lp::SimplexSolver::Options opt;
    opt.max_iterations = max_iterations;
    lp::SimplexSolver solver(lp.objective, lp.upper, opt);
    for (const GenericLp::Row& row : lp.rows) solver.add_row(row.entries, row.sense, row.rhs);
    GenericSolveResult result;
    result.status = solver.solve();
    result.x = solver.structural_values();
    result.objective = solver.objective_value() + lp.objective_constant;
    return result;
}

std::string write_solution_text(const std::vector<std::string>& names, const Eigen::VectorXd& x,
                                double objective) {
    std::ostringstream out;
    out << "# ccc solution v1\n";
    out << "# objective " << fmt_num(objective) << "\n";
    char buf[48];
    for (std::size_t j = 0; j < names.size(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", x(static_cast<long>(j)));
        out << names[j] << " " << buf << "\n";
    }
    return out.str();
}

std::string write_solution_text(const LpModel& model, const LpSolution& sol) {
    const int nv = model.num_vars();
    Eigen::VectorXd x(nv);
    for (int u = 0; u < model.n; ++u)
        for (int c = 0; c < model.num_colors; ++c) x(model.node_var(u, c)) = sol.x_node(u, c);
    const long num_pairs = static_cast<long>(pair_count(model.n));
    for (long p = 0; p < num_pairs; ++p)
        for (int c = 0; c < model.num_colors; ++c)
            x(model.pair_var(static_cast<std::size_t>(p), c)) = sol.x_pair(p, c);
    std::vector<std::string> names;
    names.reserve(nv);
    for (int j = 0; j < nv; ++j) names.push_back(model.var_name(j));
    return write_solution_text(names, x, sol.objective);
}

LpSolution read_solution_text(const LpModel& model, const std::string& text) {
    std::unordered_map<std::string, int> var_ids;
    const int nv = model.num_vars();
    for (int j = 0; j < nv; ++j) var_ids.emplace(model.var_name(j), j);

    Eigen::VectorXd x(nv);
    std::vector<char> seen(nv, 0);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string name;
        double value;
        if (!(ls >> name >> value))
            throw std::invalid_argument("solution text: bad line '" + line + "'");
        auto it = var_ids.find(name);
        if (it == var_ids.end())
            throw std::invalid_argument("solution text: unknown variable '" + name + "'");
        if (seen[it->second])
            throw std::invalid_argument("solution text: duplicate variable '" + name + "'");
        seen[it->second] = 1;
        x(it->second) = value;
    }
    for (int j = 0; j < nv; ++j)
        if (!seen[j])
            throw std::invalid_argument("solution text: missing variable '" + model.var_name(j) +
                                        "'");

    LpSolution sol;
    sol.n = model.n;
    sol.num_colors = model.num_colors;
    sol.x_node.resize(model.n, model.num_colors);
    for (int u = 0; u < model.n; ++u)
        for (int c = 0; c < model.num_colors; ++c) sol.x_node(u, c) = x(model.node_var(u, c));
    const long num_pairs = static_cast<long>(pair_count(model.n));
    sol.x_pair.resize(num_pairs, model.num_colors);
    for (long p = 0; p < num_pairs; ++p)
        for (int c = 0; c < model.num_colors; ++c)
            sol.x_pair(p, c) = x(model.pair_var(static_cast<std::size_t>(p), c));
    sol.objective = model.objective.dot(x) + model.objective_constant;
    sol.status = LpSolution::Status::constructed;
    return sol;
}

}  // namespace ccc
