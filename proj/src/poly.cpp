#include "conicdisc/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace conicdisc {

bool GrlexDesc::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da > db;
    return a > b; // lexicographic, leading variable first
}

bool PolyRing::same_ring(const PolyRing& o) const {
    return field->same_field(*o.field) && vars == o.vars;
}

std::optional<int> PolyRing::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

PolyRingPtr make_poly_ring(FieldPtr field, std::vector<std::string> vars) {
    auto r = std::make_shared<PolyRing>();
    r->field = std::move(field);
    r->vars = std::move(vars);
    return r;
}

Poly Poly::zero(const PolyRingPtr& r) {
    Poly p;
    p.ring_ = r;
    return p;
}

Poly Poly::constant(const PolyRingPtr& r, const Scalar& c) {
    Poly p = zero(r);
    if (!c.is_zero()) p.terms_.emplace(std::vector<int>(r->vars.size(), 0), c);
    return p;
}

Poly Poly::from_int(const PolyRingPtr& r, std::int64_t n) {
    return constant(r, Scalar::from_int(r->field, n));
}

Poly Poly::variable(const PolyRingPtr& r, const std::string& name) {
    auto idx = r->var_index(name);
    if (!idx) fail(ErrorCode::BadInput, "unknown variable '" + name + "'");
    std::vector<int> e(r->vars.size(), 0);
    e[*idx] = 1;
    return monomial(r, std::move(e), Scalar::one(r->field));
}

Poly Poly::monomial(const PolyRingPtr& r, std::vector<int> exps, const Scalar& c) {
    if (exps.size() != r->vars.size())
        fail(ErrorCode::BadInput, "exponent vector length mismatch");
    Poly p = zero(r);
    if (!c.is_zero()) p.terms_.emplace(std::move(exps), c);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 &&
           std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                       [](int e) { return e == 0; });
}

Scalar Poly::constant_term() const {
    std::vector<int> zero_exp(ring_->vars.size(), 0);
    auto it = terms_.find(zero_exp);
    if (it == terms_.end()) return Scalar::zero(ring_->field);
    return it->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    const auto& lead = terms_.begin()->first;
    return std::accumulate(lead.begin(), lead.end(), 0);
}

void Poly::insert_term(const std::vector<int>& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        Scalar s = it->second + c;
        if (s.is_zero())
            terms_.erase(it);
        else
            it->second = s;
    }
}

Poly Poly::operator+(const Poly& o) const {
    if (!ring_->same_ring(*o.ring_)) fail(ErrorCode::BadInput, "mixed polynomial rings");
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.insert_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (!ring_->same_ring(*o.ring_)) fail(ErrorCode::BadInput, "mixed polynomial rings");
    Poly r = zero(ring_);
    std::vector<int> e(ring_->vars.size());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.insert_term(e, ca * cb);
        }
    }
    return r;
}

bool Poly::operator==(const Poly& o) const {
    if (!ring_->same_ring(*o.ring_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first || !(it->second == jt->second)) return false;
    }
    return true;
}

Poly Poly::scaled(const Scalar& c) const {
    Poly r = zero(ring_);
    if (c.is_zero()) return r;
    for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
    return r;
}

Poly Poly::pow(int e) const {
    if (e < 0) fail(ErrorCode::BadInput, "negative polynomial power");
    Poly r = from_int(ring_, 1);
    Poly b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Poly Poly::derivative(int var) const {
    Poly r = zero(ring_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        std::vector<int> d = e;
        d[var] -= 1;
        r.insert_term(d, c * Scalar::from_int(ring_->field, e[var]));
    }
    return r;
}

Scalar Poly::evaluate(const std::vector<Scalar>& point) const {
    if (point.size() != ring_->vars.size())
        fail(ErrorCode::BadInput, "evaluation point arity mismatch");
    Scalar acc = Scalar::zero(ring_->field);
    for (const auto& [e, c] : terms_) {
        Scalar m = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > 0) m = m * point[i].pow(e[i]);
        }
        acc = acc + m;
    }
    return acc;
}

Poly Poly::substitute(const std::vector<std::optional<Scalar>>& assignment,
                      const PolyRingPtr& target) const {
    if (assignment.size() != ring_->vars.size())
        fail(ErrorCode::BadInput, "assignment arity mismatch");
    // remaining variables must appear in target, in order
    std::vector<int> remap(ring_->vars.size(), -1);
    {
        int j = 0;
        for (std::size_t i = 0; i < ring_->vars.size(); ++i) {
            if (!assignment[i]) {
                auto idx = target->var_index(ring_->vars[i]);
                if (!idx) fail(ErrorCode::BadInput, "target ring misses a free variable");
                remap[i] = *idx;
                ++j;
            }
        }
    }
    Poly r = Poly::zero(target);
    for (const auto& [e, c] : terms_) {
        Scalar coeff = c;
        std::vector<int> te(target->vars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (assignment[i]) {
                if (e[i] > 0) coeff = coeff * assignment[i]->pow(e[i]);
            } else {
                te[remap[i]] += e[i];
            }
        }
        r.insert_term(te, coeff);
    }
    return r;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string cs = c.str();
        bool negative = !cs.empty() && cs[0] == '-';
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        if (negative) cs = cs.substr(1);
        first = false;
        bool has_vars = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
        bool coeff_needs_parens = cs.find('+') != std::string::npos ||
                                  cs.find('w') != std::string::npos;
        bool wrote_coeff = false;
        if (!has_vars || cs != "1") {
            if (coeff_needs_parens && has_vars)
                os << "(" << cs << ")";
            else
                os << cs;
            wrote_coeff = true;
        }
        bool first_var = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!first_var || wrote_coeff) os << "*";
            os << ring_->vars[i];
            if (e[i] > 1) os << "^" << e[i];
            first_var = false;
        }
    }
    return os.str();
}

std::optional<Poly> poly_pth_root(const Poly& f) {
    const auto& ring = f.ring();
    if (!ring->field->is_finite())
        fail(ErrorCode::WrongCharacteristic, "p-th roots need positive characteristic");
    const int p = static_cast<int>(ring->field->characteristic());
    Poly g = Poly::zero(ring);
    for (const auto& [e, c] : f.terms()) {
        std::vector<int> d(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] % p != 0) return std::nullopt;
            d[i] = e[i] / p;
        }
        g = g + Poly::monomial(ring, std::move(d), c.pth_root());
    }
    return g;
}

} // namespace conicdisc
