#include "extlin/quantum.hpp"

#include "extlin/errors.hpp"

#include <set>
#include <sstream>

namespace extlin {

namespace {

bool same_matrices(const LocMorphism& a, const LocMorphism& b) {
    if (a.components().size() != b.components().size())
        return false;
    for (std::size_t i = 0; i < a.components().size(); ++i)
        if (a.component(i).matrix() != b.component(i).matrix())
            return false;
    return true;
}

// Compositions that fail to typecheck count as a failed law.
template <class F>
bool holds(F&& f) {
    try {
        return f();
    } catch (const ShapeError&) {
        return false;
    }
}

void require_over_point(const QuantumBundle& v, const char* who) {
    if (v.base()->num_objects() != 1 || v.base()->num_morphisms() != 1)
        throw ValidationError(std::string(who) + ": state space must live over the point");
}

} // namespace

BranchSet branch_set(const std::vector<std::string>& outcomes) {
    if (outcomes.empty())
        throw ValidationError("branch set: no outcomes");
    if (std::set<std::string>(outcomes.begin(), outcomes.end()).size() != outcomes.size())
        throw ValidationError("branch set: repeated outcome");
    Grpd b = discrete(outcomes);
    return {b, to_terminal(b)};
}

MeasureComonad::MeasureComonad(BranchSet b) : b_(std::move(b)) {
    if (b_.size() == 0)
        throw ValidationError("measurement: empty branch set");
}

MeasureComonad measure_comonad(const BranchSet& b) { return MeasureComonad(b); }

QuantumBundle MeasureComonad::apply(const QuantumBundle& v) const {
    if (!same_groupoid(v.base(), b_.set))
        throw ShapeError("measurement: bundle does not live over the branch set");
    return pullback(b_.p, sections(b_.p, v).value);
}

LocMorphism MeasureComonad::apply(const LocMorphism& phi) const {
    if (!same_groupoid(phi.domain().base(), b_.set) || !same_groupoid(phi.codomain().base(), b_.set))
        throw ShapeError("measurement: morphism does not live over the branch set");
    return pullback_mor(b_.p, sections_mor(sections(b_.p, phi.domain()), sections(b_.p, phi.codomain()), phi));
}

LocMorphism MeasureComonad::counit(const QuantumBundle& v) const {
    if (!same_groupoid(v.base(), b_.set))
        throw ShapeError("measurement: bundle does not live over the branch set");
    return sections(b_.p, v).counit;
}

LocMorphism MeasureComonad::comultiplication(const QuantumBundle& v) const {
    if (!same_groupoid(v.base(), b_.set))
        throw ShapeError("measurement: bundle does not live over the branch set");
    LocalSystem w = sections(b_.p, v).value;
    return pullback_mor(b_.p, right_unit(sections(b_.p, pullback(b_.p, w)), w));
}

ComonadLaws check_comonad_laws(const MeasureComonad& box, const QuantumBundle& v) {
    LocalSystem bv = box.apply(v);
    LocMorphism delta = box.comultiplication(v);
    LocMorphism id = identity_loc(bv);
    ComonadLaws out;
    out.left_counit = holds([&] { return same_matrices(compose_loc(box.counit(bv), delta), id); });
    out.right_counit = holds([&] { return same_matrices(compose_loc(box.apply(box.counit(v)), delta), id); });
    out.coassociative = holds([&] {
        return same_matrices(compose_loc(box.comultiplication(bv), delta), compose_loc(box.apply(delta), delta));
    });
    return out;
}

LocMorphism prepare(const BranchSet& b, std::size_t outcome, const QuantumBundle& v) {
    require_over_point(v, "prepare");
    if (outcome >= b.size())
        throw ValidationError("prepare: outcome is not in the branch set");
    LeftKan k = pushforward(b.p, pullback(b.p, v));
    return LocMorphism::from_matrices(v, k.value, GroupoidFunctor::identity(v.base()),
                                      {k.unit.component(outcome).matrix()});
}

LocMorphism prepare(const BranchSet& b, const std::string& outcome, const QuantumBundle& v) {
    const auto& names = b.set->objects();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == outcome)
            return prepare(b, i, v);
    throw ValidationError("prepare: outcome '" + outcome + "' is not in the branch set");
}

std::vector<Matrix> measure_after_prepare(const BranchSet& b, std::size_t outcome, const QuantumBundle& v) {
    LocMorphism prep = prepare(b, outcome, v);
    LocalSystem pv = pullback(b.p, v);
    Matrix w = ambidexterity_witness(pv).witness.component(0).matrix();
    LocMorphism eps = MeasureComonad(b).counit(pv);
    std::vector<Matrix> out;
    for (std::size_t c = 0; c < b.size(); ++c)
        out.push_back(eps.component(c).matrix() * w * prep.component(0).matrix());
    return out;
}

bool QubitReport::verified() const {
    for (const auto& [name, ok] : checks)
        if (!ok)
            return false;
    return !checks.empty();
}

QubitReport qubit_demo(const Scalar& q0, const Scalar& q1) {
    QubitReport r;
    r.q0 = q0;
    r.q1 = q1;
    BranchSet b = branch_set({"0", "1"});
    MeasureComonad box(b);
    LocalSystem k = unit_system(terminal());
    LocalSystem v = pullback(b.p, k);

    LocMorphism eps = box.counit(v);
    Matrix psi(2, 1);
    psi(0, 0) = q0;
    psi(1, 0) = q1;
    for (std::size_t c = 0; c < 2; ++c) {
        r.measurement.push_back(eps.component(c).matrix());
        r.outcomes.push_back((eps.component(c).matrix() * psi)(0, 0));
        r.preparation.push_back(prepare(b, c, k).component(0).matrix());
    }

    ComonadLaws laws = check_comonad_laws(box, v);
    r.checks.emplace_back("counit after comultiplication is the identity", laws.left_counit);
    r.checks.emplace_back("measured counit after comultiplication is the identity", laws.right_counit);
    r.checks.emplace_back("comultiplication is coassociative", laws.coassociative);
    r.checks.emplace_back("measurement in branch 0 is |0><0|", r.measurement[0] == Matrix::selection({0}, 2).transpose());
    r.checks.emplace_back("measurement in branch 1 is |1><1|", r.measurement[1] == Matrix::selection({1}, 2).transpose());
    r.checks.emplace_back("outcomes are the amplitudes", r.outcomes[0] == q0 && r.outcomes[1] == q1);
    r.checks.emplace_back("preparation of 0 is the column (1,0)", r.preparation[0] == Matrix::selection({0}, 2));
    r.checks.emplace_back("preparation of 1 is the column (0,1)", r.preparation[1] == Matrix::selection({1}, 2));
    bool orthogonal = true;
    for (std::size_t prepared = 0; prepared < 2; ++prepared) {
        auto m = measure_after_prepare(b, prepared, k);
        for (std::size_t c = 0; c < 2; ++c)
            orthogonal = orthogonal && (c == prepared ? m[c].is_identity() : m[c].is_zero());
    }
    r.checks.emplace_back("measuring a prepared branch returns it and kills the other", orthogonal);
    bool repeated = holds([&] {
        LocMorphism twice = compose_loc(eps, compose_loc(box.apply(eps), box.comultiplication(v)));
        return twice.component(0).matrix() == eps.component(0).matrix() &&
               twice.component(1).matrix() == eps.component(1).matrix();
    });
    r.checks.emplace_back("measuring twice agrees with measuring once", repeated);

    r.preparation_source = "unit of p_! -| p* at outcome b, read through the ambidexterity witness p_! = p_*";
    r.measurement_source = "counit of p* -| p_*";
    return r;
}

std::string render_text(const QubitReport& r) {
    std::ostringstream out;
    out << "qubit: psi = " << format_scalar(r.q0) << " |0> + " << format_scalar(r.q1) << " |1>\n";
    out << "branches: {0, 1}, p : B -> pt\n";
    for (std::size_t c = 0; c < r.measurement.size(); ++c)
        out << "measure " << c << ": " << r.measurement[c].to_string() << " -> " << format_scalar(r.outcomes[c])
            << "\n";
    for (std::size_t c = 0; c < r.preparation.size(); ++c)
        out << "prepare " << c << ": " << r.preparation[c].to_string() << "\n";
    out << "preparation: " << r.preparation_source << "\n";
    out << "measurement: " << r.measurement_source << "\n";
    for (const auto& [name, ok] : r.checks)
        out << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
    out << (r.verified() ? "all diagrams verified" : "verification failed") << "\n";
    return out.str();
}

} // namespace extlin
