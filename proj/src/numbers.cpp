#include "toric/numbers.hpp"

#include "toric/errors.hpp"

namespace toric {

PhaseQZ::PhaseQZ(Int n, Int d) {
    if (d == 0) throw InvalidInput("phase with zero denominator");
    Rat q(n, d);
    q.canonicalize();
    *this = from_rat(q);
}

PhaseQZ PhaseQZ::from_rat(const Rat& q) {
    Rat r = q - Rat(fdiv_q(q.get_num(), q.get_den()));
    r.canonicalize();
    PhaseQZ p;
    p.num = r.get_num();
    p.den = r.get_den();
    return p;
}

PhaseQZ PhaseQZ::operator+(const PhaseQZ& o) const { return from_rat(to_rat() + o.to_rat()); }
PhaseQZ PhaseQZ::operator-(const PhaseQZ& o) const { return from_rat(to_rat() - o.to_rat()); }
PhaseQZ PhaseQZ::operator-() const { return from_rat(-to_rat()); }
PhaseQZ PhaseQZ::times(const Int& k) const { return from_rat(Rat(k) * to_rat()); }

bool PhaseQZ::operator<(const PhaseQZ& o) const {
    return cmp(to_rat(), o.to_rat()) < 0;
}

std::string PhaseQZ::str() const {
    if (num == 0) return "0";
    return num.get_str() + "/" + den.get_str();
}

PhaseQZ PhaseQZ::parse(const std::string& s) {
    if (s.empty()) throw InvalidInput("empty phase string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return PhaseQZ(Int(s), Int(1));
        return PhaseQZ(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw InvalidInput("bad phase string: " + s);
    }
}

PhaseQZ phase_combination(const std::vector<Int>& coeffs, const std::vector<PhaseQZ>& phases) {
    Rat acc(0);
    for (size_t i = 0; i < coeffs.size(); ++i) acc += Rat(coeffs[i]) * phases[i].to_rat();
    return PhaseQZ::from_rat(acc);
}

} // namespace toric
