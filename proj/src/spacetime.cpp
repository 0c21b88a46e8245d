#include "gauging/spacetime.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "gauging/errors.hpp"
#include "gauging/tableau.hpp"

namespace gauging {

namespace {

constexpr uint64_t kReferenceSeed = 0x5eedULL;
constexpr double kSearchBudget = 2e7;

// One recorded event: a check measurement at round tau (time tau + 1/2) or a
// Z-basis edge readout at t_o + 1/2.
struct Record {
    int half_time = 0;
    size_t round = 0;
    bool readout = false;
    size_t edge = 0;
    bool fault_allowed = true;  // false in the perfect first/last rounds
    bool sigma = false;         // star measurement in the first deformed round
    std::string label;
    PauliOp op;
};

struct Timeline {
    size_t n = 0;
    size_t n_base = 0;
    std::vector<Record> records;
    std::vector<Detector> detectors;
    std::vector<size_t> sigma_records;
    std::map<std::string, size_t> meas_record;  // "<label>@<tau>" -> record
    std::vector<size_t> readout_record;         // edge -> record
    std::vector<std::vector<size_t>> round_records;  // tau - first_round -> records
};

std::string edge_label(size_t e) { return "e" + std::to_string(e); }

std::string meas_key(const std::string& label, size_t tau) {
    return label + "@" + std::to_string(tau);
}

DetectorPhase phase_of_slice(size_t slice, const Schedule& s) {
    if (slice < s.t_i) return DetectorPhase::before;
    if (slice == s.t_i) return DetectorPhase::seam_in;
    if (slice < s.t_o) return DetectorPhase::bulk;
    if (slice == s.t_o) return DetectorPhase::seam_out;
    return DetectorPhase::after;
}

std::vector<size_t> aux_z_edges(const PauliOp& op, size_t n_base, size_t n_aux) {
    std::vector<size_t> edges;
    for (size_t e = 0; e < n_aux; ++e) {
        if (op.z.get(n_base + e)) edges.push_back(e);
    }
    return edges;
}

bool has_aux_x(const PauliOp& op, size_t n_base, size_t n_aux) {
    for (size_t e = 0; e < n_aux; ++e) {
        if (op.x.get(n_base + e)) return true;
    }
    return false;
}

Timeline build_timeline(const DeformedCode& dc, const Schedule& s) {
    s.validate();
    const size_t m = dc.base.checks.size();
    const size_t orig_start = dc.a_checks.size() + dc.b_checks.size();
    if (orig_start + m != dc.code.checks.size()) {
        throw ValidationError("deformed code does not contain every original check");
    }
    Timeline tl;
    tl.n = dc.code.n;
    tl.n_base = dc.n_base;
    tl.readout_record.assign(dc.n_aux, 0);

    std::vector<uint8_t> is_b(dc.code.checks.size(), 0);
    for (size_t idx : dc.b_checks) is_b[idx] = 1;
    std::vector<uint8_t> is_a(dc.code.checks.size(), 0);
    for (size_t idx : dc.a_checks) is_a[idx] = 1;

    std::vector<PauliOp> base_ext;
    base_ext.reserve(m);
    for (const PauliOp& p : dc.base.checks) base_ext.push_back(p.extended(dc.n_aux));

    tl.round_records.assign(s.last_round() - s.first_round() + 1, {});
    for (size_t tau = s.first_round(); tau <= s.last_round(); ++tau) {
        const bool perfect = tau == s.first_round() || tau == s.last_round();
        const int half = 2 * static_cast<int>(tau) + 1;
        auto& this_round = tl.round_records[tau - s.first_round()];
        if (tau >= s.t_i && tau < s.t_o) {
            for (size_t idx = 0; idx < dc.code.checks.size(); ++idx) {
                if (is_b[idx] && s.cadence == FluxCadence::endpoints_only && tau != s.t_i &&
                    tau != s.t_o - 1) {
                    continue;
                }
                Record r{half,  tau,   false, 0, !perfect, is_a[idx] == 1 && tau == s.t_i,
                         dc.code.labels[idx], dc.code.checks[idx]};
                if (r.sigma) tl.sigma_records.push_back(tl.records.size());
                this_round.push_back(tl.records.size());
                tl.records.push_back(std::move(r));
            }
        } else {
            if (tau == s.t_o) {
                for (size_t e = 0; e < dc.n_aux; ++e) {
                    Record r{half, tau, true, e, true, false, edge_label(e),
                             PauliOp::single(tl.n, dc.aux_qubit(e), 'Z')};
                    tl.readout_record[e] = tl.records.size();
                    tl.records.push_back(std::move(r));
                }
            }
            for (size_t j = 0; j < m; ++j) {
                Record r{half, tau, false, 0, !perfect, false, dc.code.labels[orig_start + j],
                         base_ext[j]};
                this_round.push_back(tl.records.size());
                tl.records.push_back(std::move(r));
            }
        }
    }

    for (size_t i = 0; i < tl.records.size(); ++i) {
        const Record& r = tl.records[i];
        if (r.readout) continue;
        if (!tl.meas_record.emplace(meas_key(r.label, r.round), i).second) {
            throw ValidationError("duplicate check label in the deformed code: " + r.label);
        }
    }

    // Repeated measurements of the same check form a chain; detectors are the
    // consecutive pairs, and flux chains additionally terminate on the edge
    // initializations and readouts.
    std::map<std::string, std::vector<size_t>> by_label;
    for (size_t i = 0; i < tl.records.size(); ++i) {
        if (!tl.records[i].readout) by_label[tl.records[i].label].push_back(i);
    }
    auto meas_member = [&](size_t rid) {
        return DetectorMember{DetectorMember::Kind::measurement, tl.records[rid].label,
                              tl.records[rid].half_time};
    };
    auto emit = [&](const std::string& label, size_t slice, std::vector<DetectorMember> members,
                    std::vector<size_t> records) {
        Detector d;
        d.id = label + "@" + std::to_string(slice);
        d.slice = slice;
        d.phase = phase_of_slice(slice, s);
        d.members = std::move(members);
        d.records = std::move(records);
        tl.detectors.push_back(std::move(d));
    };
    for (const std::string& label : dc.code.labels) {
        const auto& chain = by_label.at(label);
        const Record& latest = tl.records[chain.back()];
        const bool deformed_only = tl.records[chain.front()].round >= s.t_i && latest.round < s.t_o;
        const bool flux_like = deformed_only && !has_aux_x(latest.op, tl.n_base, dc.n_aux);
        if (flux_like) {
            std::vector<DetectorMember> members;
            for (size_t e : aux_z_edges(latest.op, tl.n_base, dc.n_aux)) {
                members.push_back({DetectorMember::Kind::initialization, edge_label(e),
                                   2 * static_cast<int>(s.t_i) - 1});
            }
            members.push_back(meas_member(chain.front()));
            emit(label, s.t_i, std::move(members), {chain.front()});
        }
        for (size_t c = 0; c + 1 < chain.size(); ++c) {
            const size_t a = chain[c];
            const size_t b = chain[c + 1];
            const size_t slice = tl.records[b].round;
            std::vector<DetectorMember> members{meas_member(a)};
            std::vector<size_t> records{a, b};
            if (slice == s.t_i) {
                for (size_t e : aux_z_edges(tl.records[b].op, tl.n_base, dc.n_aux)) {
                    members.push_back({DetectorMember::Kind::initialization, edge_label(e),
                                       2 * static_cast<int>(s.t_i) - 1});
                }
            }
            if (slice == s.t_o) {
                for (size_t e : aux_z_edges(tl.records[a].op, tl.n_base, dc.n_aux)) {
                    members.push_back({DetectorMember::Kind::readout, edge_label(e),
                                       2 * static_cast<int>(s.t_o) + 1});
                    records.push_back(tl.readout_record[e]);
                }
            }
            members.push_back(meas_member(b));
            emit(label, slice, std::move(members), std::move(records));
        }
        if (flux_like) {
            std::vector<DetectorMember> members{meas_member(chain.back())};
            std::vector<size_t> records{chain.back()};
            for (size_t e : aux_z_edges(latest.op, tl.n_base, dc.n_aux)) {
                members.push_back({DetectorMember::Kind::readout, edge_label(e),
                                   2 * static_cast<int>(s.t_o) + 1});
                records.push_back(tl.readout_record[e]);
            }
            emit(label, s.t_o, std::move(members), std::move(records));
        }
    }
    return tl;
}

struct ReferencePass {
    std::vector<uint8_t> bits;
    Tableau final_state;
};

ReferencePass reference_pass(const Timeline& tl, uint64_t seed) {
    ReferencePass out;
    out.final_state = Tableau::zero_state(tl.n);
    std::mt19937_64 rng(seed);
    out.bits.reserve(tl.records.size());
    for (const Record& r : tl.records) {
        MeasureResult res = out.final_state.measure(r.op, rng);
        out.bits.push_back(res.outcome < 0 ? 1 : 0);
    }
    return out;
}

std::vector<uint8_t> detector_bits(const Timeline& tl, const std::vector<uint8_t>& record_bits) {
    std::vector<uint8_t> out;
    out.reserve(tl.detectors.size());
    for (const Detector& d : tl.detectors) {
        uint8_t parity = 0;
        for (size_t rid : d.records) parity ^= record_bits[rid];
        out.push_back(parity);
    }
    return out;
}

void require_deterministic(const Timeline& tl, uint64_t seed) {
    const auto parities = detector_bits(tl, reference_pass(tl, seed).bits);
    for (size_t i = 0; i < parities.size(); ++i) {
        if (parities[i]) {
            throw ValidationError("detector " + tl.detectors[i].id +
                                  " is not deterministic in a fault-free run");
        }
    }
}

std::vector<FaultSite> enumerate_sites(const Timeline& tl, const DeformedCode& dc,
                                       const Schedule& s) {
    std::vector<FaultSite> sites;
    const char paulis[3] = {'X', 'Y', 'Z'};
    for (size_t t = s.first_round() + 1; t <= s.last_round(); ++t) {
        for (size_t q = 0; q < tl.n; ++q) {
            if (q >= tl.n_base && (t < s.t_i || t > s.t_o)) continue;
            for (char p : paulis) {
                sites.push_back(FaultSite::pauli_at(q, p, static_cast<long>(t)));
            }
        }
    }
    for (const Record& r : tl.records) {
        if (r.readout || !r.fault_allowed) continue;
        sites.push_back(FaultSite::measurement_at(r.label, static_cast<long>(r.round)));
    }
    for (size_t e = 0; e < dc.n_aux; ++e) sites.push_back(FaultSite::init_fault(e));
    for (size_t e = 0; e < dc.n_aux; ++e) sites.push_back(FaultSite::readout_fault(e));
    return sites;
}

// Frame propagation of one elementary fault: which recorded outcomes flip.
BitVec record_flips(const Timeline& tl, const DeformedCode& dc, const Schedule& s,
                    const FaultSite& site) {
    BitVec flips(tl.records.size());
    auto propagate = [&](size_t q, bool xc, bool zc, int half) {
        for (size_t i = 0; i < tl.records.size(); ++i) {
            const Record& r = tl.records[i];
            if (r.half_time <= half) continue;
            if ((r.op.z.get(q) && xc) != (r.op.x.get(q) && zc)) flips.flip(i);
        }
    };
    switch (site.kind) {
        case FaultKind::pauli:
            propagate(site.qubit, site.pauli != 'Z', site.pauli != 'X',
                      2 * static_cast<int>(site.t));
            break;
        case FaultKind::measurement: {
            auto it = tl.meas_record.find(meas_key(site.check, static_cast<size_t>(site.t)));
            if (it == tl.meas_record.end()) {
                throw ValidationError("unknown fault site: " + site.str());
            }
            flips.flip(it->second);
            break;
        }
        case FaultKind::init:
            propagate(dc.aux_qubit(site.edge), true, false, 2 * static_cast<int>(s.t_i) - 1);
            break;
        case FaultKind::readout:
            flips.flip(tl.readout_record[site.edge]);
            break;
    }
    return flips;
}

}  // namespace

void Schedule::validate() const {
    if (t_o <= t_i) throw ValidationError("schedule needs t_o > t_i");
    if (pre < 1 || post < 1) {
        throw ValidationError("schedule needs at least one round before t_i and one after t_o");
    }
    if (t_i < pre) throw ValidationError("schedule starts before time zero; need t_i >= pre");
}

FaultSite FaultSite::pauli_at(size_t qubit, char p, long t) {
    if (p != 'X' && p != 'Y' && p != 'Z') {
        throw ValidationError("pauli fault must be X, Y, or Z");
    }
    FaultSite f;
    f.kind = FaultKind::pauli;
    f.qubit = qubit;
    f.pauli = p;
    f.t = t;
    return f;
}

FaultSite FaultSite::measurement_at(std::string check, long tau) {
    FaultSite f;
    f.kind = FaultKind::measurement;
    f.check = std::move(check);
    f.t = tau;
    return f;
}

FaultSite FaultSite::init_fault(size_t edge) {
    FaultSite f;
    f.kind = FaultKind::init;
    f.edge = edge;
    return f;
}

FaultSite FaultSite::readout_fault(size_t edge) {
    FaultSite f;
    f.kind = FaultKind::readout;
    f.edge = edge;
    return f;
}

std::string FaultSite::str() const {
    std::ostringstream os;
    switch (kind) {
        case FaultKind::pauli:
            os << "pauli " << pauli << " q" << qubit << " t" << t;
            break;
        case FaultKind::measurement:
            os << "meas " << check << " t" << t;
            break;
        case FaultKind::init:
            os << "init e" << edge;
            break;
        case FaultKind::readout:
            os << "readout e" << edge;
            break;
    }
    return os.str();
}

std::vector<Detector> build_detectors(const DeformedCode& dc, const Schedule& s) {
    Timeline tl = build_timeline(dc, s);
    require_deterministic(tl, kReferenceSeed);
    return std::move(tl.detectors);
}

std::vector<uint8_t> detector_parities(const DeformedCode& dc, const Schedule& s, uint64_t seed) {
    Timeline tl = build_timeline(dc, s);
    return detector_bits(tl, reference_pass(tl, seed).bits);
}

size_t SyndromeMap::site_index(const FaultSite& site) const {
    auto it = index.find(site.str());
    if (it == index.end()) throw ValidationError("unknown fault site: " + site.str());
    return it->second;
}

SyndromeMap build_syndrome_map(const DeformedCode& dc, const Schedule& s, uint64_t seed) {
    Timeline tl = build_timeline(dc, s);
    ReferencePass ref = reference_pass(tl, seed);
    for (size_t i = 0; i < tl.detectors.size(); ++i) {
        uint8_t parity = 0;
        for (size_t rid : tl.detectors[i].records) parity ^= ref.bits[rid];
        if (parity) {
            throw ValidationError("detector " + tl.detectors[i].id +
                                  " is not deterministic in a fault-free run");
        }
    }

    SyndromeMap map;
    map.schedule = s;
    map.sites = enumerate_sites(tl, dc, s);
    map.d = BitMatrix(map.sites.size(), tl.detectors.size());
    map.sigma_flip = BitVec(map.sites.size());
    map.residual = BitMatrix(map.sites.size(), tl.n);
    for (size_t i = 0; i < map.sites.size(); ++i) {
        const FaultSite& site = map.sites[i];
        const BitVec flips = record_flips(tl, dc, s, site);
        for (size_t d = 0; d < tl.detectors.size(); ++d) {
            bool parity = false;
            for (size_t rid : tl.detectors[d].records) parity ^= flips.get(rid);
            if (parity) map.d.set(i, d, true);
        }
        bool sigma = false;
        for (size_t rid : tl.sigma_records) sigma ^= flips.get(rid);
        if (sigma) map.sigma_flip.set(i, true);
        if (site.kind == FaultKind::pauli && site.qubit < tl.n_base) {
            const bool xc = site.pauli != 'Z';
            const bool zc = site.pauli != 'X';
            for (size_t r = 0; r < tl.n; ++r) {
                const PauliOp& g = ref.final_state.stab[r];
                if ((g.z.get(site.qubit) && xc) != (g.x.get(site.qubit) && zc)) {
                    map.residual.set(i, r, true);
                }
            }
        }
        map.index.emplace(site.str(), i);
    }
    map.detectors = std::move(tl.detectors);
    return map;
}

SyndromeResult syndrome(const SyndromeMap& map, const std::vector<FaultSite>& faults) {
    BitVec acc(map.d.cols);
    bool sigma = false;
    for (const FaultSite& f : faults) {
        const size_t i = map.site_index(f);
        acc.xor_with(map.d.row(i));
        sigma ^= map.sigma_flip.get(i);
    }
    SyndromeResult out;
    out.violated = acc.ones();
    out.sigma_flipped = sigma;
    return out;
}

std::string SpacetimeStabilizerReport::str() const {
    std::ostringstream os;
    os << "spacetime stabilizers: " << generators << " generators verified (";
    bool first = true;
    for (const auto& [family, count] : by_family) {
        if (!first) os << ", ";
        os << family << "=" << count;
        first = false;
    }
    os << ")";
    return os.str();
}

SpacetimeStabilizerReport verify_spacetime_stabilizers(const DeformedCode& dc, const Schedule& s) {
    const Timeline tl = build_timeline(dc, s);
    const SyndromeMap map = build_syndrome_map(dc, s);
    SpacetimeStabilizerReport report;

    auto check_trivial = [&](const std::string& name, const std::vector<FaultSite>& sites,
                             const std::string& family) {
        BitVec det(map.d.cols);
        BitVec res(map.residual.cols);
        bool sigma = false;
        for (const FaultSite& f : sites) {
            const size_t i = map.site_index(f);
            det.xor_with(map.d.row(i));
            res.xor_with(map.residual.row(i));
            sigma ^= map.sigma_flip.get(i);
        }
        if (det.any()) {
            throw ValidationError("spacetime stabilizer '" + name + "' violates detector " +
                                  map.detectors[det.ones().front()].id);
        }
        if (sigma) {
            throw ValidationError("spacetime stabilizer '" + name +
                                  "' flips the logical measurement result");
        }
        if (res.any()) {
            throw ValidationError("spacetime stabilizer '" + name + "' alters the final state");
        }
        report.generators += 1;
        report.by_family[family] += 1;
    };

    auto op_sites = [&](const PauliOp& op, size_t t) {
        std::vector<FaultSite> sites;
        for (size_t q = 0; q < op.n; ++q) {
            const char c = op.pauli_at(q);
            if (c != 'I') sites.push_back(FaultSite::pauli_at(q, c, static_cast<long>(t)));
        }
        return sites;
    };

    // Check operators applied at one time step act trivially.
    const size_t m = dc.base.checks.size();
    const size_t orig_start = dc.a_checks.size() + dc.b_checks.size();
    for (size_t t = s.first_round() + 1; t <= s.last_round(); ++t) {
        if (t > s.t_i && t <= s.t_o) {
            for (size_t idx = 0; idx < dc.code.checks.size(); ++idx) {
                check_trivial(
                    "check " + dc.code.labels[idx] + " at t=" + std::to_string(t),
                    op_sites(dc.code.checks[idx], t), "check_operator");
            }
        } else {
            for (size_t j = 0; j < m; ++j) {
                check_trivial(
                    "check " + dc.code.labels[orig_start + j] + " at t=" + std::to_string(t),
                    op_sites(dc.base.checks[j].extended(dc.n_aux), t), "check_operator");
            }
        }
    }
    for (size_t e = 0; e < dc.n_aux; ++e) {
        for (size_t t : {s.t_i, s.t_o}) {
            check_trivial("Z e" + std::to_string(e) + " at t=" + std::to_string(t),
                          {FaultSite::pauli_at(dc.aux_qubit(e), 'Z', static_cast<long>(t))},
                          "edge_z_rest");
        }
    }

    // A Pauli at consecutive times plus flipped reports of every measurement
    // in between that anticommutes with it.
    auto pauli_pair = [&](size_t q, char p, size_t t) {
        std::vector<FaultSite> sites{FaultSite::pauli_at(q, p, static_cast<long>(t)),
                                     FaultSite::pauli_at(q, p, static_cast<long>(t) + 1)};
        const PauliOp single = PauliOp::single(tl.n, q, p);
        for (size_t rid : tl.round_records[t - s.first_round()]) {
            if (!tl.records[rid].op.commutes(single)) {
                sites.push_back(FaultSite::measurement_at(tl.records[rid].label,
                                                          static_cast<long>(t)));
            }
        }
        std::ostringstream name;
        name << "pauli pair " << p << " q" << q << " t=" << t;
        check_trivial(name.str(), sites, "pauli_pair");
    };
    for (size_t t = s.first_round() + 1; t + 1 <= s.last_round(); ++t) {
        for (size_t q = 0; q < tl.n_base; ++q) {
            for (char p : {'X', 'Z'}) pauli_pair(q, p, t);
        }
    }
    for (size_t t = s.t_i; t + 1 <= s.t_o; ++t) {
        for (size_t e = 0; e < dc.n_aux; ++e) {
            for (char p : {'X', 'Z'}) pauli_pair(dc.aux_qubit(e), p, t);
        }
    }

    // Seam terminations.
    for (size_t e = 0; e < dc.n_aux; ++e) {
        check_trivial("init termination e" + std::to_string(e),
                      {FaultSite::init_fault(e),
                       FaultSite::pauli_at(dc.aux_qubit(e), 'X', static_cast<long>(s.t_i))},
                      "init_termination");
        check_trivial("readout termination e" + std::to_string(e),
                      {FaultSite::pauli_at(dc.aux_qubit(e), 'X', static_cast<long>(s.t_o)),
                       FaultSite::readout_fault(e)},
                      "readout_termination");
    }
    if (dc.plan.graph.edge_count() == dc.n_aux &&
        dc.plan.graph.vertex_count() == dc.a_checks.size()) {
        auto star_label = [&](size_t v) { return dc.code.labels[dc.a_checks[v]]; };
        for (size_t e = 0; e < dc.n_aux; ++e) {
            const auto& edge = dc.plan.graph.edge(e);
            check_trivial(
                "seam Z e" + std::to_string(e) + " start",
                {FaultSite::pauli_at(dc.aux_qubit(e), 'Z', static_cast<long>(s.t_i) + 1),
                 FaultSite::measurement_at(star_label(edge.u), static_cast<long>(s.t_i)),
                 FaultSite::measurement_at(star_label(edge.v), static_cast<long>(s.t_i))},
                "edge_z_seam");
            check_trivial(
                "seam Z e" + std::to_string(e) + " end",
                {FaultSite::pauli_at(dc.aux_qubit(e), 'Z', static_cast<long>(s.t_o) - 1),
                 FaultSite::measurement_at(star_label(edge.u), static_cast<long>(s.t_o) - 1),
                 FaultSite::measurement_at(star_label(edge.v), static_cast<long>(s.t_o) - 1)},
                "edge_z_seam");
        }
    }
    return report;
}

std::vector<FaultSite> time_logical_fault(const DeformedCode& dc, const Schedule& s) {
    if (dc.a_checks.empty()) throw ValidationError("deformed code has no star checks");
    const std::string label = dc.code.labels[dc.a_checks.front()];
    std::vector<FaultSite> sites;
    for (size_t tau = s.t_i; tau < s.t_o; ++tau) {
        sites.push_back(FaultSite::measurement_at(label, static_cast<long>(tau)));
    }
    const SyndromeMap map = build_syndrome_map(dc, s);
    const SyndromeResult res = syndrome(map, sites);
    if (!res.violated.empty()) {
        throw ValidationError("time logical fault has a nonempty syndrome");
    }
    if (!res.sigma_flipped) {
        throw ValidationError("time logical fault does not flip the measurement result");
    }
    return sites;
}

std::vector<FaultSite> flux_time_string(const DeformedCode& dc, const Schedule& s, size_t edge) {
    if (edge >= dc.n_aux) throw ValidationError("edge index out of range");
    const Timeline tl = build_timeline(dc, s);
    const PauliOp xe = PauliOp::single(tl.n, dc.aux_qubit(edge), 'X');
    std::vector<FaultSite> sites{FaultSite::init_fault(edge)};
    for (const Record& r : tl.records) {
        if (r.readout || r.round < s.t_i || r.round >= s.t_o) continue;
        if (!r.op.commutes(xe)) {
            sites.push_back(FaultSite::measurement_at(r.label, static_cast<long>(r.round)));
        }
    }
    sites.push_back(FaultSite::readout_fault(edge));
    const SyndromeMap map = build_syndrome_map(dc, s);
    const SyndromeResult res = syndrome(map, sites);
    if (!res.violated.empty()) {
        throw ValidationError("flux time string has a nonempty syndrome");
    }
    if (res.sigma_flipped) {
        throw ValidationError("flux time string flips the measurement result");
    }
    return sites;
}

std::optional<FaultWitness> fault_distance_search(const DeformedCode& dc, const Schedule& s,
                                                  size_t w_max) {
    if (w_max == 0) return std::nullopt;
    const SyndromeMap map = build_syndrome_map(dc, s);
    const size_t n_sites = map.sites.size();

    double combos = 0.0;
    double term = 1.0;
    for (size_t w = 1; w <= w_max; ++w) {
        term *= static_cast<double>(n_sites - w + 1) / static_cast<double>(w);
        combos += term;
        if (combos > kSearchBudget) {
            std::ostringstream os;
            os << "fault enumeration budget exceeded: >" << static_cast<uint64_t>(kSearchBudget)
               << " sets of weight <= " << w_max << " over " << n_sites << " sites";
            throw BudgetError(os.str());
        }
    }

    std::vector<BitVec> det_rows;
    std::vector<BitVec> ext_rows;  // residual bits then the sigma bit
    det_rows.reserve(n_sites);
    ext_rows.reserve(n_sites);
    size_t max_flips = 1;
    for (size_t i = 0; i < n_sites; ++i) {
        det_rows.push_back(map.d.row(i));
        max_flips = std::max(max_flips, det_rows.back().popcount());
        BitVec ext(map.residual.cols + 1);
        const BitVec res = map.residual.row(i);
        for (size_t b : res.ones()) ext.set(b, true);
        if (map.sigma_flip.get(i)) ext.set(map.residual.cols, true);
        ext_rows.push_back(std::move(ext));
    }

    BitVec det(map.d.cols);
    BitVec ext(map.residual.cols + 1);
    std::vector<size_t> chosen;
    std::optional<FaultWitness> found;
    std::function<void(size_t, size_t)> descend = [&](size_t start, size_t left) {
        if (found) return;
        if (left == 0) {
            if (!det.any() && ext.any()) {
                FaultWitness w;
                w.weight = chosen.size();
                for (size_t i : chosen) w.sites.push_back(map.sites[i]);
                w.sigma_flipped = ext.get(map.residual.cols);
                found = w;
            }
            return;
        }
        if (det.popcount() > left * max_flips) return;
        for (size_t i = start; i + left <= n_sites; ++i) {
            det.xor_with(det_rows[i]);
            ext.xor_with(ext_rows[i]);
            chosen.push_back(i);
            descend(i + 1, left - 1);
            chosen.pop_back();
            ext.xor_with(ext_rows[i]);
            det.xor_with(det_rows[i]);
            if (found) return;
        }
    };
    for (size_t w = 1; w <= w_max && !found; ++w) descend(0, w);
    return found;
}

}  // namespace gauging
