#include "kclab/reduction.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "kclab/errors.hpp"

namespace kclab {

std::string to_string(VertexKind kind) {
    switch (kind) {
    case VertexKind::cycle: return "cycle";
    case VertexKind::x1: return "x1";
    case VertexKind::x2: return "x2";
    case VertexKind::x3: return "x3";
    case VertexKind::x4: return "x4";
    case VertexKind::y: return "y";
    case VertexKind::path_p: return "pathP";
    case VertexKind::path_pprime: return "pathPprime";
    }
    return "?";
}

LabelMap::LabelMap(int kappa, int n) : kappa_(kappa), n_(n) {
    if (kappa < 1) throw InvalidInstanceError("kappa must be >= 1");
    if (n < 2) throw InvalidInstanceError("n must be >= 2");
    roles_.reserve(vertex_count());
    const int cyc = cycle_length();
    for (int i = 1; i <= kappa; ++i) {
        for (int j = 1; j <= kappa; ++j) {
            for (int pos = 1; pos <= cyc; ++pos)
                roles_.push_back({VertexKind::cycle, i, j, pos});
            roles_.push_back({VertexKind::x1, i, j, 0});
            roles_.push_back({VertexKind::x2, i, j, 0});
            roles_.push_back({VertexKind::x3, i, j, 0});
            roles_.push_back({VertexKind::x4, i, j, 0});
            roles_.push_back({VertexKind::y, i, j, 0});
        }
    }
    for (int i = 1; i <= kappa; ++i)
        for (int j = 1; j <= kappa - 1; ++j)
            for (int t = 1; t <= n + 1; ++t)
                roles_.push_back({VertexKind::path_p, i, j, t});
    for (int i = 1; i <= kappa - 1; ++i)
        for (int j = 1; j <= kappa; ++j)
            for (int t = 1; t <= n + 1; ++t)
                roles_.push_back({VertexKind::path_pprime, i, j, t});
}

int LabelMap::vertex_count() const {
    return kappa_ * kappa_ * gadget_block() + 2 * kappa_ * (kappa_ - 1) * (n_ + 1);
}

void LabelMap::check_cell(int i, int j) const {
    if (i < 1 || i > kappa_ || j < 1 || j > kappa_)
        throw IndexOutOfRangeError("gadget (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") outside [" + std::to_string(kappa_) + "]^2");
}

int LabelMap::cycle_id(int i, int j, int pos) const {
    check_cell(i, j);
    const int cyc = cycle_length();
    pos = ((pos - 1) % cyc + cyc) % cyc; // 0-based, wrapped
    return ((i - 1) * kappa_ + (j - 1)) * gadget_block() + pos;
}

int LabelMap::x_id(int i, int j, int q) const {
    check_cell(i, j);
    if (q < 1 || q > 4) throw IndexOutOfRangeError("x index must be 1..4");
    return ((i - 1) * kappa_ + (j - 1)) * gadget_block() + cycle_length() + (q - 1);
}

int LabelMap::y_id(int i, int j) const {
    check_cell(i, j);
    return ((i - 1) * kappa_ + (j - 1)) * gadget_block() + cycle_length() + 4;
}

int LabelMap::path_p_interior(int i, int j, int t) const {
    check_cell(i, j);
    if (j > kappa_ - 1) throw IndexOutOfRangeError("P path requires j <= kappa-1");
    if (t < 1 || t > n_ + 1) throw IndexOutOfRangeError("interior index must be 1..n+1");
    const int base = kappa_ * kappa_ * gadget_block();
    const int idx = (i - 1) * (kappa_ - 1) + (j - 1);
    return base + idx * (n_ + 1) + (t - 1);
}

int LabelMap::path_pp_interior(int i, int j, int t) const {
    check_cell(i, j);
    if (i > kappa_ - 1) throw IndexOutOfRangeError("P' path requires i <= kappa-1");
    if (t < 1 || t > n_ + 1) throw IndexOutOfRangeError("interior index must be 1..n+1");
    const int base = kappa_ * kappa_ * gadget_block() + kappa_ * (kappa_ - 1) * (n_ + 1);
    const int idx = (i - 1) * kappa_ + (j - 1);
    return base + idx * (n_ + 1) + (t - 1);
}

int LabelMap::path_p_vertex(int i, int j, int t) const {
    if (t == 0) return x_id(i, j, 2);
    if (t == n_ + 2) return x_id(i, j + 1, 4);
    return path_p_interior(i, j, t);
}

int LabelMap::path_pp_vertex(int i, int j, int t) const {
    if (t == 0) return x_id(i, j, 3);
    if (t == n_ + 2) return x_id(i + 1, j, 1);
    return path_pp_interior(i, j, t);
}

const VertexRole& LabelMap::role(int id) const {
    if (id < 0 || id >= static_cast<int>(roles_.size()))
        throw IndexOutOfRangeError("vertex id " + std::to_string(id) + " out of range");
    return roles_[id];
}

std::string LabelMap::vertex_label(int id) const {
    const VertexRole& r = role(id);
    std::string ij = std::to_string(r.i) + "_" + std::to_string(r.j);
    switch (r.kind) {
    case VertexKind::cycle: return "O_" + ij + "_" + std::to_string(r.pos);
    case VertexKind::x1: return "x1_" + ij;
    case VertexKind::x2: return "x2_" + ij;
    case VertexKind::x3: return "x3_" + ij;
    case VertexKind::x4: return "x4_" + ij;
    case VertexKind::y: return "y_" + ij;
    case VertexKind::path_p: return "P_" + ij + "_" + std::to_string(r.pos);
    case VertexKind::path_pprime: return "Pp_" + ij + "_" + std::to_string(r.pos);
    }
    return "?";
}

ReductionInstance build_reduction(const GTInstance& gt) {
    gt.validate();
    const int kappa = gt.kappa;
    const int n = gt.n;
    const int nsq = n * n;

    ReductionInstance inst;
    inst.labels = LabelMap(kappa, n);
    inst.source = gt;
    inst.k = 5 * kappa * kappa;
    inst.threshold = Rational(2 * nsq);

    const LabelMap& lm = inst.labels;
    WeightedGraph g(lm.vertex_count());
    for (int v = 0; v < lm.vertex_count(); ++v) g.set_label(v, lm.vertex_label(v));

    const Rational unit(1);
    const Rational y_len(2 * nsq + 1);
    const Rational path_len(1, n + 2);
    const int cyc = lm.cycle_length();

    for (int i = 1; i <= kappa; ++i) {
        for (int j = 1; j <= kappa; ++j) {
            for (int pos = 1; pos <= cyc; ++pos)
                g.add_edge(lm.cycle_id(i, j, pos), lm.cycle_id(i, j, pos + 1), unit);
            g.add_edge(lm.y_id(i, j), lm.cycle_id(i, j, 1), y_len);
            g.add_edge(lm.y_id(i, j), lm.cycle_id(i, j, 4 * nsq + 2), y_len);
            g.add_edge(lm.y_id(i, j), lm.cycle_id(i, j, 8 * nsq + 3), y_len);
            g.add_edge(lm.y_id(i, j), lm.cycle_id(i, j, 12 * nsq + 4), y_len);

            const auto& cell = gt.set_at(i, j);
            for (int tau = 1; tau <= static_cast<int>(cell.size()); ++tau) {
                auto [a, b] = cell[tau - 1];
                Rational la_short = Rational(2 * nsq) - Rational(a, n + 1);      // l'_a
                Rational lb = Rational(2 * nsq - 1) + Rational(b, n + 1);        // l_b
                Rational la = Rational(2 * nsq - 1) + Rational(a, n + 1);        // l_a
                Rational lb_short = Rational(2 * nsq) - Rational(b, n + 1);      // l'_b
                g.add_edge(lm.x_id(i, j, 1), lm.cycle_id(i, j, tau), la_short);
                g.add_edge(lm.x_id(i, j, 2), lm.cycle_id(i, j, tau + 4 * nsq + 1), lb);
                g.add_edge(lm.x_id(i, j, 3), lm.cycle_id(i, j, tau + 8 * nsq + 2), la);
                g.add_edge(lm.x_id(i, j, 4), lm.cycle_id(i, j, tau + 12 * nsq + 3), lb_short);
            }
        }
    }
    for (int i = 1; i <= kappa; ++i)
        for (int j = 1; j <= kappa - 1; ++j)
            for (int t = 0; t <= n + 1; ++t)
                g.add_edge(lm.path_p_vertex(i, j, t), lm.path_p_vertex(i, j, t + 1), path_len);
    for (int i = 1; i <= kappa - 1; ++i)
        for (int j = 1; j <= kappa; ++j)
            for (int t = 0; t <= n + 1; ++t)
                g.add_edge(lm.path_pp_vertex(i, j, t), lm.path_pp_vertex(i, j, t + 1), path_len);

    // planar by construction; the Euler bound is the cheap sanity net
    const long long v_count = g.vertex_count();
    const long long e_count = static_cast<long long>(g.edges().size());
    if (e_count > 3 * v_count - 6)
        throw InvalidInstanceError("Euler bound violated: |E| > 3|V| - 6");

    inst.graph = std::move(g);
    return inst;
}

CenterSet centers_from_assignment(const ReductionInstance& inst, const GTAssignment& assignment) {
    const LabelMap& lm = inst.labels;
    const int kappa = lm.kappa();
    const int nsq = lm.n() * lm.n();
    if (assignment.picks.size() != static_cast<std::size_t>(kappa) * kappa)
        throw IndexOutOfRangeError("assignment size mismatch");

    std::vector<int> ids;
    ids.reserve(static_cast<std::size_t>(5) * kappa * kappa);
    for (int i = 1; i <= kappa; ++i) {
        for (int j = 1; j <= kappa; ++j) {
            const int tau = assignment.pick_at(kappa, i, j);
            const int sigma = static_cast<int>(inst.source.set_at(i, j).size());
            if (tau < 1 || tau > sigma)
                throw IndexOutOfRangeError("pick " + std::to_string(tau) +
                                           " invalid for cell (" + std::to_string(i) + "," +
                                           std::to_string(j) + ")");
            ids.push_back(lm.cycle_id(i, j, tau));
            ids.push_back(lm.cycle_id(i, j, tau + 4 * nsq + 1));
            ids.push_back(lm.cycle_id(i, j, tau + 8 * nsq + 2));
            ids.push_back(lm.cycle_id(i, j, tau + 12 * nsq + 3));
            ids.push_back(lm.y_id(i, j));
        }
    }
    return CenterSet::of(std::move(ids));
}

std::string to_string(StructureFault fault) {
    switch (fault) {
    case StructureFault::none: return "none";
    case StructureFault::missing_y_center: return "MissingYCenter";
    case StructureFault::cycle_center_count_mismatch: return "CycleCenterCountMismatch";
    case StructureFault::non_equidistant_cycle_centers: return "NonEquidistantCycleCenters";
    case StructureFault::no_matching_element: return "NoMatchingElement";
    case StructureFault::stray_center: return "StrayCenter";
    }
    return "?";
}

ExtractResult assignment_from_centers(const ReductionInstance& inst, const CenterSet& centers) {
    const LabelMap& lm = inst.labels;
    const int kappa = lm.kappa();
    const int nsq = lm.n() * lm.n();
    const int spacing = 4 * nsq + 1;

    auto fail = [](StructureFault fault, std::string detail) {
        return ExtractResult{std::nullopt, fault, std::move(detail)};
    };
    auto cell_name = [](int i, int j) {
        return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    };

    std::map<std::pair<int, int>, std::vector<int>> cycle_positions;
    std::vector<int> strays;
    std::vector<std::vector<char>> y_present(kappa + 1, std::vector<char>(kappa + 1, 0));
    for (int id : centers.ids) {
        const VertexRole& r = lm.role(id); // throws IndexOutOfRangeError on bad ids
        switch (r.kind) {
        case VertexKind::y: y_present[r.i][r.j] = 1; break;
        case VertexKind::cycle: cycle_positions[{r.i, r.j}].push_back(r.pos); break;
        default: strays.push_back(id); break;
        }
    }

    for (int i = 1; i <= kappa; ++i)
        for (int j = 1; j <= kappa; ++j)
            if (!y_present[i][j])
                return fail(StructureFault::missing_y_center,
                            "y" + cell_name(i, j) + " is not a center");

    for (int i = 1; i <= kappa; ++i)
        for (int j = 1; j <= kappa; ++j) {
            auto it = cycle_positions.find({i, j});
            const int count = it == cycle_positions.end() ? 0 : static_cast<int>(it->second.size());
            if (count != 4)
                return fail(StructureFault::cycle_center_count_mismatch,
                            "cycle " + cell_name(i, j) + " holds " + std::to_string(count) +
                                " centers, expected 4");
        }

    GTAssignment out;
    out.picks.assign(static_cast<std::size_t>(kappa) * kappa, 0);
    for (auto& [cell, positions] : cycle_positions) {
        auto [i, j] = cell;
        std::sort(positions.begin(), positions.end());
        if (positions[1] - positions[0] != spacing || positions[2] - positions[1] != spacing ||
            positions[3] - positions[2] != spacing)
            return fail(StructureFault::non_equidistant_cycle_centers,
                        "cycle " + cell_name(i, j) + " centers at positions " +
                            std::to_string(positions[0]) + "," + std::to_string(positions[1]) +
                            "," + std::to_string(positions[2]) + "," +
                            std::to_string(positions[3]) + " are not spaced " +
                            std::to_string(spacing));
        const int tau = positions[0];
        const int sigma = static_cast<int>(inst.source.set_at(i, j).size());
        if (tau > sigma)
            return fail(StructureFault::no_matching_element,
                        "cycle " + cell_name(i, j) + " centers start at position " +
                            std::to_string(tau) + " but the set has only " +
                            std::to_string(sigma) + " elements");
        out.picks[(i - 1) * kappa + (j - 1)] = tau;
    }

    if (!strays.empty())
        return fail(StructureFault::stray_center,
                    "center " + std::to_string(strays.front()) + " (" +
                        lm.vertex_label(strays.front()) + ") is neither a y nor a cycle vertex");

    return ExtractResult{std::move(out), StructureFault::none, ""};
}

void write_labels(const LabelMap& labels, std::ostream& out) {
    for (int id = 0; id < labels.vertex_count(); ++id) {
        const VertexRole& r = labels.role(id);
        out << "role " << id << " " << to_string(r.kind) << " " << r.i << " " << r.j;
        if (r.kind == VertexKind::cycle || r.kind == VertexKind::path_p ||
            r.kind == VertexKind::path_pprime)
            out << " " << r.pos;
        out << "\n";
    }
}

LabelMap read_labels(std::istream& in) {
    // infer kappa and n from the role lines, then verify the whole layout
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) throw FormatError("blank line in label file");
        lines.push_back(line);
    }
    if (lines.empty()) throw FormatError("empty label file");

    int kappa = 0;
    int cycle_max = 0;
    for (const std::string& l : lines) {
        std::istringstream ls(l);
        std::string tag, kind;
        int id, i, j;
        if (!(ls >> tag >> id >> kind >> i >> j) || tag != "role")
            throw FormatError("expected 'role <id> <kind> <i> <j> [<pos>]', got '" + l + "'");
        kappa = std::max(kappa, std::max(i, j));
        if (kind == "cycle") {
            int pos;
            if (!(ls >> pos)) throw FormatError("cycle role missing position: '" + l + "'");
            cycle_max = std::max(cycle_max, pos);
        }
    }
    if (cycle_max < 20 || (cycle_max - 4) % 16 != 0)
        throw FormatError("cycle length " + std::to_string(cycle_max) + " is not 16n^2+4");
    const int nsq = (cycle_max - 4) / 16;
    int n = 0;
    while ((n + 1) * (n + 1) <= nsq) ++n;
    if (n * n != nsq) throw FormatError("cycle length does not give an integer n");

    LabelMap lm(kappa, n);
    if (static_cast<int>(lines.size()) != lm.vertex_count())
        throw FormatError("label file has " + std::to_string(lines.size()) +
                          " roles, expected " + std::to_string(lm.vertex_count()));
    for (int id = 0; id < lm.vertex_count(); ++id) {
        std::istringstream ls(lines[id]);
        std::string tag, kind;
        int rid, i, j, pos = 0;
        ls >> tag >> rid >> kind >> i >> j;
        const VertexRole& r = lm.role(id);
        bool has_pos = r.kind == VertexKind::cycle || r.kind == VertexKind::path_p ||
                       r.kind == VertexKind::path_pprime;
        if (has_pos && !(ls >> pos))
            throw FormatError("missing position in '" + lines[id] + "'");
        if (rid != id || kind != to_string(r.kind) || i != r.i || j != r.j || pos != r.pos)
            throw FormatError("role line " + std::to_string(id) +
                              " does not match the canonical layout: '" + lines[id] + "'");
    }
    return lm;
}

void save_labels(const LabelMap& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_labels(labels, out);
}

LabelMap load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_labels(in);
}

} // namespace kclab
