#ifndef NAC_CRYPTO_PAIRING_HPP
#define NAC_CRYPTO_PAIRING_HPP

#include "nac/crypto/rng.hpp"

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace nac::crypto::typea {

/**
 * Symmetric pairing on the supersingular curve y^2 = x^3 + x over F_p,
 * p = 3 (mod 4), 512-bit p, 160-bit prime subgroup order r, embedding
 * degree 2. G1 is the order-r subgroup of E(F_p); GT is the order-r
 * subgroup of F_{p^2}^*. e(P, Q) is the reduced Tate pairing of P and
 * the distortion image (-x_Q, i*y_Q) of Q.
 */
struct CurveParams
{
  mpz_class p;
  mpz_class r;
  mpz_class cofactor; // (p + 1) / r
};

const CurveParams&
params();

constexpr size_t FIELD_BYTES = 64;
constexpr size_t ZR_BYTES = 20;
constexpr size_t G1_BYTES = 2 * FIELD_BYTES;
constexpr size_t GT_BYTES = 2 * FIELD_BYTES;

/// Element a + b*i of F_{p^2}, i^2 = -1.
struct Fp2
{
  mpz_class a;
  mpz_class b;

  static Fp2
  one()
  {
    return {1, 0};
  }

  bool
  operator==(const Fp2& o) const
  {
    return a == o.a && b == o.b;
  }
};

Fp2
mul(const Fp2& x, const Fp2& y);

Fp2
square(const Fp2& x);

Fp2
conjugate(const Fp2& x);

Fp2
inverse(const Fp2& x);

Fp2
pow(const Fp2& x, const mpz_class& e);

struct Point
{
  mpz_class x;
  mpz_class y;
  bool infinity = true;

  static Point
  identity()
  {
    return {};
  }

  bool
  operator==(const Point& o) const
  {
    return infinity ? o.infinity : (!o.infinity && x == o.x && y == o.y);
  }
};

bool
isOnCurve(const Point& pt);

Point
add(const Point& a, const Point& b);

Point
negate(const Point& a);

Point
mul(const Point& a, const mpz_class& k);

/// Deterministic map from bytes into G1 (try-and-increment, then cofactor clearing).
Point
hashToG1(ByteView data);

/// Uniform-ish element of Z_r drawn from 32 random bytes.
mpz_class
randomZr(Rng& rng);

Fp2
pairing(const Point& p, const Point& q);

/// Product of e(p_i, q_i) sharing one final exponentiation.
Fp2
pairingProduct(const std::vector<std::pair<Point, Point>>& pairs);

struct PairingTerm
{
  Point p;
  Point q;
  mpz_class exponent;
};

/// Product of e(p_i, q_i)^exponent_i sharing one final exponentiation.
Fp2
pairingPowProduct(const std::vector<PairingTerm>& terms);

Bytes
encodePoint(const Point& pt);

/// Throws std::invalid_argument for bytes that are not a point of G1's curve.
Point
decodePoint(ByteView bytes);

Bytes
encodeGt(const Fp2& x);

Fp2
decodeGt(ByteView bytes);

Bytes
encodeZr(const mpz_class& x);

mpz_class
decodeZr(ByteView bytes);

} // namespace nac::crypto::typea

#endif // NAC_CRYPTO_PAIRING_HPP
