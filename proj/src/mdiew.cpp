#include "qwit/mdiew.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace qwit {

namespace {

std::pair<BsmSign, BsmSign> class_signs(OutcomeClass cls) {
    switch (cls) {
    case OutcomeClass::pp:
        return {BsmSign::plus, BsmSign::plus};
    case OutcomeClass::mm:
        return {BsmSign::minus, BsmSign::minus};
    case OutcomeClass::pm:
        return {BsmSign::plus, BsmSign::minus};
    case OutcomeClass::mp:
        return {BsmSign::minus, BsmSign::plus};
    }
    throw std::invalid_argument("unknown outcome class");
}

Bell sign_to_bell(BsmSign s) {
    return s == BsmSign::plus ? Bell::phi_plus : Bell::phi_minus;
}

std::string bell_label(Bell b) {
    switch (b) {
    case Bell::phi_plus:
        return "F+";
    case Bell::phi_minus:
        return "F-";
    case Bell::psi_plus:
        return "P+";
    case Bell::psi_minus:
        return "P-";
    }
    throw std::invalid_argument("unknown Bell state");
}

constexpr Bell kAllBells[4] = {Bell::phi_plus, Bell::phi_minus, Bell::psi_plus,
                               Bell::psi_minus};

// Decomposition-side basis element: a minus announcement tilde-flips its side.
ComplexMatrix basis_element(const AncillaState& tau, const AncillaState& omega,
                            OutcomeClass cls) {
    const auto [sa, sb] = class_signs(cls);
    ComplexMatrix a = tau.matrix();
    ComplexMatrix b = omega.matrix();
    if (sa == BsmSign::minus) {
        a = tilde(a);
    }
    if (sb == BsmSign::minus) {
        b = tilde(b);
    }
    return tensor(a.transpose(), b.transpose());
}

ComplexMatrix joint_state(const TwoQubitState& rho, const AncillaState& tau,
                          const AncillaState& omega) {
    return tensor(tau.matrix(), tensor(rho.matrix(), omega.matrix()));
}

using ProbabilityFn =
    std::function<double(OutcomeClass, const AncillaState&, const AncillaState&)>;

double accumulate_class(const CoefficientTable& table, const ProbabilityFn& prob,
                        std::vector<MdiewContribution>& contributions) {
    double j = 0.0;
    for (const BetaEntry& e : table.entries) {
        const AncillaState tau(e.s);
        const AncillaState omega(e.t);
        const double p = prob(table.cls, tau, omega);
        contributions.push_back({table.cls, e.s, e.t, e.beta, p});
        j += e.beta * p;
    }
    return j;
}

MdiewResult evaluate_j(const MdiewTables& tables, std::optional<OutcomeClass> cls,
                       const ProbabilityFn& prob) {
    MdiewResult res;
    if (cls) {
        res.j_value = accumulate_class(tables.for_class(*cls), prob, res.contributions);
        return res;
    }
    double sum = 0.0;
    for (OutcomeClass c : kOutcomeClasses) {
        sum += accumulate_class(tables.for_class(c), prob, res.contributions);
    }
    res.j_value = sum / 4.0;
    return res;
}

std::vector<SettingKey> all_settings() {
    using I = AncillaIndex;
    return {{I::mixed0, I::mixed0}, {I::x1, I::x1},         {I::y2, I::y2},
            {I::z3, I::z3},         {I::mixed0, I::diag4},  {I::diag4, I::mixed0},
            {I::mixed0, I::diag4p}, {I::diag4p, I::mixed0}};
}

std::string setting_label(SettingKey key) {
    return "(" + ancilla_label(key.first) + "," + ancilla_label(key.second) + ")";
}

std::string announced_label(Bell a, Bell b) {
    const auto sign = [](Bell x) { return x == Bell::phi_plus ? "+" : "-"; };
    return std::string(sign(a)) + sign(b);
}

} // namespace

std::string outcome_class_label(OutcomeClass cls) {
    const auto [a, b] = class_signs(cls);
    const auto sign = [](BsmSign s) { return s == BsmSign::plus ? "+" : "-"; };
    return std::string(sign(a)) + sign(b);
}

OutcomeClass outcome_class_of(BsmOutcome o) {
    if (o.alice == BsmSign::plus) {
        return o.bob == BsmSign::plus ? OutcomeClass::pp : OutcomeClass::pm;
    }
    return o.bob == BsmSign::plus ? OutcomeClass::mp : OutcomeClass::mm;
}

double bsm_probability(const TwoQubitState& rho, const AncillaState& tau,
                       const AncillaState& omega, BsmOutcome outcome) {
    return bsm_probability_full(rho, tau, omega, sign_to_bell(outcome.alice),
                                sign_to_bell(outcome.bob));
}

double bsm_probability_full(const TwoQubitState& rho, const AncillaState& tau,
                            const AncillaState& omega, Bell alice, Bell bob) {
    const ComplexMatrix projector = tensor(bell_projector(alice), bell_projector(bob));
    return expectation(projector, joint_state(rho, tau, omega));
}

double CoefficientTable::beta(AncillaIndex s, AncillaIndex t) const {
    for (const BetaEntry& e : entries) {
        if (e.s == s && e.t == t) {
            return e.beta;
        }
    }
    return 0.0;
}

CoefficientTable solve_beta(const WitnessOperator& w,
                            const std::vector<std::pair<AncillaState, AncillaState>>& basis,
                            OutcomeClass cls) {
    if (basis.empty()) {
        throw std::invalid_argument("solve_beta: empty basis");
    }
    const std::size_t k = basis.size();
    const std::size_t rows = 32; // re+im of 16 entries

    const auto vec = [](const ComplexMatrix& m, std::vector<double>& out) {
        out.resize(32);
        for (std::size_t i = 0; i < 16; ++i) {
            out[2 * i] = m.data()[i].real();
            out[2 * i + 1] = m.data()[i].imag();
        }
    };

    std::vector<std::vector<double>> a(k);
    for (std::size_t c = 0; c < k; ++c) {
        vec(basis_element(basis[c].first, basis[c].second, cls), a[c]);
    }
    std::vector<double> b;
    vec(w.matrix(), b);

    // modified Gram-Schmidt least squares
    std::vector<std::vector<double>> q = a;
    std::vector<std::vector<double>> r(k, std::vector<double>(k, 0.0));
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t j = 0; j < c; ++j) {
            double dot = 0.0;
            for (std::size_t i = 0; i < rows; ++i) {
                dot += q[j][i] * q[c][i];
            }
            r[j][c] = dot;
            for (std::size_t i = 0; i < rows; ++i) {
                q[c][i] -= dot * q[j][i];
            }
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            nrm += q[c][i] * q[c][i];
        }
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) {
            throw std::invalid_argument("solve_beta: basis settings are linearly dependent");
        }
        r[c][c] = nrm;
        for (std::size_t i = 0; i < rows; ++i) {
            q[c][i] /= nrm;
        }
    }
    std::vector<double> rhs(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        double dot = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            dot += q[c][i] * b[i];
        }
        rhs[c] = dot;
    }
    std::vector<double> beta(k, 0.0);
    for (std::size_t c = k; c-- > 0;) {
        double s = rhs[c];
        for (std::size_t j = c + 1; j < k; ++j) {
            s -= r[c][j] * beta[j];
        }
        beta[c] = s / r[c][c];
    }

    CoefficientTable table;
    table.cls = cls;
    table.entries.reserve(k);
    for (std::size_t c = 0; c < k; ++c) {
        table.entries.push_back(
            {basis[c].first.index(), basis[c].second.index(), beta[c]});
    }

    ComplexMatrix recon = reconstruct_witness(table);
    recon -= w.matrix();
    const double residual = recon.frobenius_norm();
    if (residual >= 1e-10) {
        throw DecompositionError("basis does not express the witness (residual " +
                                     std::to_string(residual) + ")",
                                 residual);
    }
    return table;
}

ComplexMatrix reconstruct_witness(const CoefficientTable& table) {
    ComplexMatrix sum(4);
    for (const BetaEntry& e : table.entries) {
        const ComplexMatrix term =
            basis_element(AncillaState(e.s), AncillaState(e.t), table.cls);
        kernels::active().axpy(cd{e.beta, 0.0}, term.data(), sum.data(), 16);
    }
    return sum;
}

const CoefficientTable& MdiewTables::for_class(OutcomeClass cls) const {
    for (const CoefficientTable& t : tables) {
        if (t.cls == cls) {
            return t;
        }
    }
    throw std::logic_error("table for outcome class missing");
}

const MdiewTables& MdiewTables::standard() {
    static const MdiewTables t = [] {
        MdiewTables out{};
        std::size_t i = 0;
        for (OutcomeClass cls : kOutcomeClasses) {
            const PairClass pc = (cls == OutcomeClass::pp || cls == OutcomeClass::mm)
                                     ? PairClass::same_sign
                                     : PairClass::mixed_sign;
            out.tables[i++] = solve_beta(WitnessOperator::singlet(), ancilla_set(pc), cls);
        }
        return out;
    }();
    return t;
}

const MdiewTables& MdiewTables::ten_term() {
    static const MdiewTables t = [] {
        using I = AncillaIndex;
        std::vector<std::pair<AncillaState, AncillaState>> basis;
        for (I s : {I::mixed0, I::x1, I::y2, I::z3}) {
            for (I w : {I::mixed0, I::x1, I::y2, I::z3}) {
                basis.emplace_back(AncillaState(s), AncillaState(w));
            }
        }
        MdiewTables out{};
        std::size_t i = 0;
        for (OutcomeClass cls : kOutcomeClasses) {
            out.tables[i++] = solve_beta(WitnessOperator::singlet(), basis, cls);
        }
        return out;
    }();
    return t;
}

MdiewResult j_value_exact(const TwoQubitState& rho, const MdiewTables& tables,
                          OutcomeClass cls) {
    return evaluate_j(tables, cls,
                      [&rho](OutcomeClass c, const AncillaState& tau, const AncillaState& om) {
                          const auto [sa, sb] = class_signs(c);
                          return bsm_probability(rho, tau, om, {sa, sb});
                      });
}

MdiewResult j_value_combined(const TwoQubitState& rho, const MdiewTables& tables) {
    return evaluate_j(tables, std::nullopt,
                      [&rho](OutcomeClass c, const AncillaState& tau, const AncillaState& om) {
                          const auto [sa, sb] = class_signs(c);
                          return bsm_probability(rho, tau, om, {sa, sb});
                      });
}

std::map<SettingKey, CountRecord> simulate_mdiew_counts(const TwoQubitState& rho,
                                                        std::uint64_t trials_per_setting,
                                                        std::uint64_t seed) {
    std::map<SettingKey, CountRecord> out;
    std::uint64_t stream = 0;
    for (const SettingKey& key : all_settings()) {
        const AncillaState tau(key.first);
        const AncillaState omega(key.second);
        std::map<std::string, double> probs;
        for (Bell a : kAllBells) {
            for (Bell b : kAllBells) {
                probs[bell_label(a) + ":" + bell_label(b)] =
                    bsm_probability_full(rho, tau, omega, a, b);
            }
        }
        const CountRecord raw =
            sample_counts(setting_label(key), probs, {}, trials_per_setting,
                          derive_stream_seed(seed, stream++));
        CountRecord rec;
        rec.setting = raw.setting;
        rec.trials = raw.trials;
        for (Bell a : {Bell::phi_plus, Bell::phi_minus}) {
            for (Bell b : {Bell::phi_plus, Bell::phi_minus}) {
                rec.counts[announced_label(a, b)] =
                    raw.counts.at(bell_label(a) + ":" + bell_label(b));
            }
        }
        out.emplace(key, std::move(rec));
    }
    return out;
}

MdiewResult j_value_from_counts(const std::map<SettingKey, CountRecord>& records,
                                const MdiewTables& tables,
                                std::optional<OutcomeClass> cls) {
    const auto prob = [&records](OutcomeClass c, const AncillaState& tau,
                                 const AncillaState& om) {
        const SettingKey key{tau.index(), om.index()};
        const auto it = records.find(key);
        if (it == records.end() || it->second.trials == 0) {
            throw std::runtime_error("missing counts for setting " + setting_label(key));
        }
        const CountRecord& rec = it->second;
        const auto cit = rec.counts.find(outcome_class_label(c));
        const double n = (cit == rec.counts.end()) ? 0.0 : static_cast<double>(cit->second);
        return n / static_cast<double>(rec.trials);
    };

    MdiewResult res = evaluate_j(tables, cls, prob);

    // binomial variance per contribution, combined in quadrature with the
    // beta weights
    double var = 0.0;
    for (const MdiewContribution& cb : res.contributions) {
        const SettingKey key{cb.s, cb.t};
        const double trials = static_cast<double>(records.at(key).trials);
        var += cb.beta * cb.beta * cb.probability * (1.0 - cb.probability) / trials;
    }
    const double scale = cls ? 1.0 : 0.25;
    res.std_error = scale * std::sqrt(var);
    return res;
}

BsmPovm BsmPovm::validated(ComplexMatrix plus, ComplexMatrix minus, ComplexMatrix discard) {
    const ComplexMatrix* elems[3] = {&plus, &minus, &discard};
    for (const ComplexMatrix* m : elems) {
        if (m->dim() != 4) {
            throw std::invalid_argument("POVM elements must be 4x4");
        }
        if (!m->is_hermitian(1e-9)) {
            throw std::invalid_argument("POVM element is not Hermitian");
        }
        for (cd lambda : eigenvalues_4x4(*m)) {
            if (lambda.real() < -1e-9) {
                throw std::invalid_argument("POVM element is not positive semidefinite");
            }
        }
    }
    ComplexMatrix sum = plus;
    sum += minus;
    sum += discard;
    if (max_abs_diff(sum, ComplexMatrix::identity(4)) > 1e-9) {
        throw std::invalid_argument("POVM elements do not sum to identity");
    }
    return BsmPovm{std::move(plus), std::move(minus), std::move(discard)};
}

BsmPovm BsmPovm::honest() {
    ComplexMatrix discard = bell_projector(Bell::psi_plus);
    discard += bell_projector(Bell::psi_minus);
    return validated(bell_projector(Bell::phi_plus), bell_projector(Bell::phi_minus),
                     std::move(discard));
}

const ComplexMatrix& BsmPovm::element(BsmSign sign) const {
    return sign == BsmSign::plus ? plus : minus;
}

MdiewResult j_value_adversarial(const TwoQubitState& sigma, const BsmPovm& alice,
                                const BsmPovm& bob, const MdiewTables& tables,
                                std::optional<OutcomeClass> cls) {
    std::map<SettingKey, ComplexMatrix> joints;
    std::array<std::optional<ComplexMatrix>, 4> eve_ops;

    const auto prob = [&](OutcomeClass c, const AncillaState& tau, const AncillaState& om) {
        const std::size_t ci = static_cast<std::size_t>(c);
        if (!eve_ops[ci]) {
            const auto [sa, sb] = class_signs(c);
            eve_ops[ci] = tensor(alice.element(sa), bob.element(sb));
        }
        const SettingKey key{tau.index(), om.index()};
        auto it = joints.find(key);
        if (it == joints.end()) {
            it = joints.emplace(key, joint_state(sigma, tau, om)).first;
        }
        return expectation(*eve_ops[ci], it->second);
    };
    return evaluate_j(tables, cls, prob);
}

ComplexMatrix random_density_matrix(Rng& rng, std::size_t dim) {
    ComplexMatrix a(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            a(i, j) = cd{rng.next_gaussian(), rng.next_gaussian()};
        }
    }
    ComplexMatrix g = a * a.adjoint();
    g *= 1.0 / g.trace();
    return g;
}

namespace {

ComplexMatrix random_qubit_projector(Rng& rng) {
    cd a{rng.next_gaussian(), rng.next_gaussian()};
    cd b{rng.next_gaussian(), rng.next_gaussian()};
    const double nrm = std::sqrt(std::norm(a) + std::norm(b));
    a /= nrm;
    b /= nrm;
    ComplexMatrix m(2);
    m(0, 0) = a * std::conj(a);
    m(0, 1) = a * std::conj(b);
    m(1, 0) = b * std::conj(a);
    m(1, 1) = b * std::conj(b);
    return m;
}

// Denman-Beavers iteration; returns S^(-1/2) for positive definite S.
ComplexMatrix inverse_sqrt(const ComplexMatrix& s) {
    ComplexMatrix y = s;
    ComplexMatrix z = ComplexMatrix::identity(s.dim());
    for (int i = 0; i < 100; ++i) {
        ComplexMatrix yn = y;
        yn += inverse(z);
        yn *= 0.5;
        ComplexMatrix zn = z;
        zn += inverse(y);
        zn *= 0.5;
        const double delta = max_abs_diff(yn, y);
        y = std::move(yn);
        z = std::move(zn);
        if (delta < 1e-14 * (1.0 + y.frobenius_norm())) {
            break;
        }
    }
    return z;
}

} // namespace

TwoQubitState random_product_state(Rng& rng) {
    const ComplexMatrix a = random_qubit_projector(rng);
    const ComplexMatrix b = random_qubit_projector(rng);
    return TwoQubitState::validated(tensor(a, b), "random_product");
}

TwoQubitState random_separable_state(Rng& rng) {
    const std::size_t k = 1 + rng.next_below(4);
    std::vector<double> weights(k);
    double total = 0.0;
    for (double& w : weights) {
        w = -std::log(1.0 - rng.next_double());
        total += w;
    }
    ComplexMatrix sum(4);
    for (std::size_t i = 0; i < k; ++i) {
        const ComplexMatrix part =
            tensor(random_qubit_projector(rng), random_qubit_projector(rng));
        kernels::active().axpy(cd{weights[i] / total, 0.0}, part.data(), sum.data(), 16);
    }
    return TwoQubitState::validated(std::move(sum), "random_separable");
}

ComplexMatrix random_unitary2(Rng& rng) {
    cd a0{rng.next_gaussian(), rng.next_gaussian()};
    cd a1{rng.next_gaussian(), rng.next_gaussian()};
    cd b0{rng.next_gaussian(), rng.next_gaussian()};
    cd b1{rng.next_gaussian(), rng.next_gaussian()};
    double nrm = std::sqrt(std::norm(a0) + std::norm(a1));
    a0 /= nrm;
    a1 /= nrm;
    const cd overlap = std::conj(a0) * b0 + std::conj(a1) * b1;
    b0 -= overlap * a0;
    b1 -= overlap * a1;
    nrm = std::sqrt(std::norm(b0) + std::norm(b1));
    b0 /= nrm;
    b1 /= nrm;
    ComplexMatrix u(2);
    u(0, 0) = a0;
    u(1, 0) = a1;
    u(0, 1) = b0;
    u(1, 1) = b1;
    return u;
}

BsmPovm random_povm(Rng& rng) {
    ComplexMatrix g[3] = {ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4)};
    for (auto& gi : g) {
        ComplexMatrix a(4);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                a(i, j) = cd{rng.next_gaussian(), rng.next_gaussian()};
            }
        }
        gi = a * a.adjoint();
    }
    ComplexMatrix s = g[0];
    s += g[1];
    s += g[2];
    const ComplexMatrix si = inverse_sqrt(s);
    ComplexMatrix m[3] = {si * g[0] * si, si * g[1] * si, si * g[2] * si};
    for (auto& mi : m) {
        // symmetrize away the iteration's rounding
        ComplexMatrix h = mi.adjoint();
        mi += h;
        mi *= 0.5;
    }
    return BsmPovm::validated(std::move(m[0]), std::move(m[1]), std::move(m[2]));
}

AdversarySweep adversary_sweep(std::uint64_t draws, std::uint64_t seed,
                               const MdiewTables& tables) {
    AdversarySweep sweep;
    sweep.min_combined = std::numeric_limits<double>::infinity();
    sweep.min_single = std::numeric_limits<double>::infinity();
    sweep.draws.reserve(draws);
    for (std::uint64_t i = 0; i < draws; ++i) {
        Rng rng = Rng::stream(seed, i);
        const TwoQubitState sigma = random_separable_state(rng);
        const BsmPovm alice = random_povm(rng);
        const BsmPovm bob = random_povm(rng);
        AdversaryDraw draw;
        draw.index = i;
        draw.j_combined = j_value_adversarial(sigma, alice, bob, tables).j_value;
        std::size_t ci = 0;
        for (OutcomeClass cls : kOutcomeClasses) {
            draw.j_single[ci++] = j_value_adversarial(sigma, alice, bob, tables, cls).j_value;
        }
        sweep.min_combined = std::min(sweep.min_combined, draw.j_combined);
        for (double js : draw.j_single) {
            sweep.min_single = std::min(sweep.min_single, js);
        }
        sweep.draws.push_back(draw);
    }
    return sweep;
}

} // namespace qwit
