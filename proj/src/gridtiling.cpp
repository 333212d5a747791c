#include "kclab/gridtiling.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kclab/errors.hpp"
#include "kclab/rng.hpp"

namespace kclab {

const std::vector<std::pair<int, int>>& GTInstance::set_at(int i, int j) const {
    if (i < 1 || i > kappa || j < 1 || j > kappa)
        throw IndexOutOfRangeError("cell (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") outside [" + std::to_string(kappa) + "]^2");
    return sets[static_cast<std::size_t>(i - 1) * kappa + (j - 1)];
}

void GTInstance::validate() const {
    if (kappa < 1) throw InvalidInstanceError("kappa must be >= 1");
    if (n < 2) throw InvalidInstanceError("n must be >= 2");
    if (sets.size() != static_cast<std::size_t>(kappa) * kappa)
        throw InvalidInstanceError("expected kappa^2 sets");
    for (const auto& cell : sets) {
        if (cell.empty()) throw InvalidInstanceError("empty set");
        if (cell.size() > static_cast<std::size_t>(n) * n)
            throw InvalidInstanceError("set larger than n^2");
        std::set<std::pair<int, int>> seen;
        for (auto [a, b] : cell) {
            if (a < 1 || a > n || b < 1 || b > n)
                throw InvalidInstanceError("pair (" + std::to_string(a) + "," +
                                           std::to_string(b) + ") outside [n]^2");
            if (!seen.insert({a, b}).second)
                throw InvalidInstanceError("duplicate pair in set");
        }
    }
}

bool check_gt_assignment(const GTInstance& instance, const GTAssignment& assignment) {
    const int kappa = instance.kappa;
    if (assignment.picks.size() != static_cast<std::size_t>(kappa) * kappa)
        throw IndexOutOfRangeError("assignment size mismatch");

    auto picked = [&](int i, int j) -> std::pair<int, int> {
        const auto& cell = instance.set_at(i, j);
        int tau = assignment.pick_at(kappa, i, j);
        if (tau < 1 || tau > static_cast<int>(cell.size()))
            throw IndexOutOfRangeError("pick " + std::to_string(tau) + " invalid for cell (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
        return cell[tau - 1];
    };

    for (int i = 1; i <= kappa; ++i) {
        for (int j = 1; j <= kappa; ++j) {
            auto [a, b] = picked(i, j);
            if (i < kappa) {
                auto [a2, b2] = picked(i + 1, j);
                if (a > a2) return false;
            }
            if (j < kappa) {
                auto [a2, b2] = picked(i, j + 1);
                if (b > b2) return false;
            }
        }
    }
    return true;
}

std::optional<GTAssignment> solve_gt(const GTInstance& instance) {
    instance.validate();
    const int kappa = instance.kappa;
    GTAssignment current;
    current.picks.assign(static_cast<std::size_t>(kappa) * kappa, 0);

    auto pair_of = [&](int i, int j) {
        return instance.set_at(i, j)[current.pick_at(kappa, i, j) - 1];
    };

    // cells in column-major order: cell c -> (i, j)
    auto fill = [&](auto&& self, int c) -> bool {
        if (c == kappa * kappa) return true;
        const int j = c / kappa + 1;
        const int i = c % kappa + 1;
        const auto& cell = instance.set_at(i, j);
        for (int tau = 1; tau <= static_cast<int>(cell.size()); ++tau) {
            auto [a, b] = cell[tau - 1];
            if (i > 1 && pair_of(i - 1, j).first > a) continue;  // column: a nondecreasing
            if (j > 1 && pair_of(i, j - 1).second > b) continue; // row: b nondecreasing
            current.picks[(i - 1) * kappa + (j - 1)] = tau;
            if (self(self, c + 1)) return true;
        }
        current.picks[(i - 1) * kappa + (j - 1)] = 0;
        return false;
    };

    if (!fill(fill, 0)) return std::nullopt;
    if (!check_gt_assignment(instance, current))
        throw std::logic_error("solve_gt produced an assignment that fails the constraints");
    return current;
}

GTInstance gen_gt(int kappa, int n, int set_size, bool planted, std::uint64_t seed) {
    if (kappa < 1) throw InfeasibleParamsError("kappa must be >= 1");
    if (n < 2) throw InfeasibleParamsError("n must be >= 2");
    if (set_size < 1 || set_size > n * n)
        throw InfeasibleParamsError("set_size must lie in [1, n^2]");

    std::mt19937_64 rng(seed);
    GTInstance inst;
    inst.kappa = kappa;
    inst.n = n;
    inst.sets.resize(static_cast<std::size_t>(kappa) * kappa);

    std::vector<std::pair<int, int>> plant;
    if (planted) {
        // a nondecreasing down each column, b nondecreasing along each row
        std::vector<std::vector<int>> a_col(kappa, std::vector<int>(kappa));
        std::vector<std::vector<int>> b_row(kappa, std::vector<int>(kappa));
        for (int j = 0; j < kappa; ++j) {
            for (int i = 0; i < kappa; ++i) a_col[j][i] = rng_range(rng, 1, n);
            std::sort(a_col[j].begin(), a_col[j].end());
        }
        for (int i = 0; i < kappa; ++i) {
            for (int j = 0; j < kappa; ++j) b_row[i][j] = rng_range(rng, 1, n);
            std::sort(b_row[i].begin(), b_row[i].end());
        }
        plant.resize(static_cast<std::size_t>(kappa) * kappa);
        for (int i = 0; i < kappa; ++i)
            for (int j = 0; j < kappa; ++j)
                plant[static_cast<std::size_t>(i) * kappa + j] = {a_col[j][i], b_row[i][j]};
    }

    for (int i = 0; i < kappa; ++i) {
        for (int j = 0; j < kappa; ++j) {
            auto& cell = inst.sets[static_cast<std::size_t>(i) * kappa + j];
            std::set<std::pair<int, int>> seen;
            if (planted) {
                cell.push_back(plant[static_cast<std::size_t>(i) * kappa + j]);
                seen.insert(cell.back());
            }
            while (static_cast<int>(cell.size()) < set_size) {
                std::pair<int, int> p{rng_range(rng, 1, n), rng_range(rng, 1, n)};
                if (seen.insert(p).second) cell.push_back(p);
            }
        }
    }
    inst.validate();
    return inst;
}

void write_gt(const GTInstance& instance, std::ostream& out) {
    out << "gt " << instance.kappa << " " << instance.n << "\n";
    for (int i = 1; i <= instance.kappa; ++i) {
        for (int j = 1; j <= instance.kappa; ++j) {
            out << "set " << i << " " << j << " :";
            for (auto [a, b] : instance.set_at(i, j)) out << " " << a << "," << b;
            out << "\n";
        }
    }
}

namespace {

int parse_int_token(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        int value = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return value;
    } catch (const std::exception&) {
        throw FormatError(std::string("bad ") + what + ": '" + s + "'");
    }
}

} // namespace

GTInstance read_gt(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("missing gt header");
    std::istringstream header(line);
    std::string tag;
    int kappa = 0, n = 0;
    if (!(header >> tag >> kappa >> n) || tag != "gt")
        throw FormatError("expected 'gt <kappa> <n>' header");
    std::string rest;
    if (header >> rest) throw FormatError("trailing content in gt header");

    GTInstance inst;
    inst.kappa = kappa;
    inst.n = n;
    if (kappa < 1) throw FormatError("kappa must be >= 1");
    inst.sets.resize(static_cast<std::size_t>(kappa) * kappa);
    for (int i = 1; i <= kappa; ++i) {
        for (int j = 1; j <= kappa; ++j) {
            if (!std::getline(in, line))
                throw FormatError("missing set line for cell (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
            std::istringstream ls(line);
            std::string set_tag, colon;
            int ri = 0, rj = 0;
            if (!(ls >> set_tag >> ri >> rj >> colon) || set_tag != "set" || colon != ":")
                throw FormatError("expected 'set <i> <j> : ...', got '" + line + "'");
            if (ri != i || rj != j)
                throw FormatError("set lines must appear in row-major order");
            auto& cell = inst.sets[static_cast<std::size_t>(i - 1) * kappa + (j - 1)];
            std::string pair_tok;
            while (ls >> pair_tok) {
                auto comma = pair_tok.find(',');
                if (comma == std::string::npos)
                    throw FormatError("expected 'a,b' pair, got '" + pair_tok + "'");
                int a = parse_int_token(pair_tok.substr(0, comma), "pair coordinate");
                int b = parse_int_token(pair_tok.substr(comma + 1), "pair coordinate");
                cell.emplace_back(a, b);
            }
        }
    }
    if (std::getline(in, line) && !line.empty()) throw FormatError("trailing content after sets");
    try {
        inst.validate();
    } catch (const InvalidInstanceError& bad) {
        throw FormatError(bad.what());
    }
    return inst;
}

void save_gt(const GTInstance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_gt(instance, out);
}

GTInstance load_gt(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_gt(in);
}

} // namespace kclab
