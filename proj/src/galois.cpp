#include "cpb/galois.hpp"

#include <array>
#include <sstream>

namespace cpb::gf {

namespace {

int poly_degree(std::uint32_t p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1;
    }
    return d;
}

// Remainder of a mod b in GF(2)[x].
std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
    const int db = poly_degree(b);
    int da = poly_degree(a);
    while (da >= db) {
        a ^= b << (da - db);
        da = poly_degree(a);
    }
    return a;
}

}  // namespace

bool poly_irreducible(std::uint32_t poly, int degree) {
    if (degree < 1 || poly_degree(poly) != degree) return false;
    if ((poly & 1) == 0) return false;  // divisible by x
    for (int d = 1; 2 * d <= degree; ++d) {
        for (std::uint32_t q = (1u << d); q < (2u << d); ++q) {
            if (poly_mod(poly, q) == 0) return false;
        }
    }
    return true;
}

std::uint32_t GaloisField::default_poly(int degree) {
    // Primitive polynomials (x is a generator) for every supported degree.
    // Degree 8 uses x^8+x^6+x^5+x+1: among the sixteen degree-8 primitive
    // polynomials it is one of only two whose generator keeps the (14,10,3)
    // code decodable under every 4-node erasure pattern.
    static constexpr std::array<std::uint32_t, 17> kPolys = {
        0,       0,       0x7,     0xB,    0x13,    0x25,    0x43,   0x89,
        0x163,   0x211,   0x409,   0x805,  0x1053,  0x201B,  0x4443, 0x8003,
        0x1100B,
    };
    if (degree < kMinDegree || degree > kMaxDegree) {
        std::ostringstream os;
        os << "field degree " << degree << " out of range [" << kMinDegree << ", "
           << kMaxDegree << "]";
        throw ParamError(os.str());
    }
    return kPolys[static_cast<std::size_t>(degree)];
}

GaloisField::GaloisField(int degree) : GaloisField(degree, default_poly(degree)) {}

GaloisField::GaloisField(int degree, std::uint32_t reduction_poly)
    : degree_(degree), poly_(reduction_poly) {
    if (degree < kMinDegree || degree > kMaxDegree) {
        std::ostringstream os;
        os << "field degree " << degree << " out of range [" << kMinDegree << ", "
           << kMaxDegree << "]";
        throw ParamError(os.str());
    }
    if (poly_degree(poly_) != degree) {
        std::ostringstream os;
        os << "reduction polynomial 0x" << std::hex << poly_ << std::dec
           << " does not have degree " << degree;
        throw ParamError(os.str());
    }
    if (!poly_irreducible(poly_, degree)) {
        std::ostringstream os;
        os << "reduction polynomial 0x" << std::hex << poly_ << std::dec
           << " is reducible over GF(2)";
        throw ParamError(os.str());
    }
    build_tables();
}

void GaloisField::build_tables() {
    const std::uint32_t go = group_order();
    exp_.assign(2 * go, 0);
    log_.assign(order(), 0);

    std::uint32_t value = 1;
    for (std::uint32_t i = 0; i < go; ++i) {
        if (value == 1 && i > 0) {
            std::ostringstream os;
            os << "alpha (x) is not primitive for reduction polynomial 0x" << std::hex
               << poly_ << ": order " << std::dec << i << " < " << go;
            throw ParamError(os.str());
        }
        exp_[i] = static_cast<Elem>(value);
        exp_[i + go] = static_cast<Elem>(value);
        log_[value] = static_cast<std::uint16_t>(i);
        value <<= 1;
        if (value & order()) value ^= poly_;
    }
    if (value != 1) {
        // Cannot happen with an irreducible polynomial; kept as a hard check.
        throw ParamError("alpha does not return to 1 at the group order");
    }
}

Elem GaloisField::pow(Elem a, long long e) const {
    if (a == 0) {
        if (e > 0) return 0;
        throw MathError("gf_pow: zero base with non-positive exponent");
    }
    std::uint64_t idx =
        static_cast<std::uint64_t>(log_[a]) * mod_group(e) % group_order();
    return exp_[idx];
}

FieldPtr build_field(int degree) { return std::make_shared<GaloisField>(degree); }

FieldPtr build_field(int degree, std::uint32_t reduction_poly) {
    return std::make_shared<GaloisField>(degree, reduction_poly);
}

}  // namespace cpb::gf
