#include "nac/crypto/pairing.hpp"
#include "nac/crypto/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace nac::crypto::typea {

namespace {

const mpz_class&
P()
{
  return params().p;
}

mpz_class
modP(const mpz_class& x)
{
  mpz_class out;
  mpz_mod(out.get_mpz_t(), x.get_mpz_t(), P().get_mpz_t());
  return out;
}

mpz_class
invP(const mpz_class& x)
{
  mpz_class out;
  if (mpz_invert(out.get_mpz_t(), x.get_mpz_t(), P().get_mpz_t()) == 0)
    throw std::domain_error("non-invertible field element");
  return out;
}

mpz_class
fromBytes(ByteView b)
{
  mpz_class out;
  if (!b.empty())
    mpz_import(out.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
  return out;
}

Bytes
toFixed(const mpz_class& x, size_t width)
{
  size_t bytes = (mpz_sizeinbase(x.get_mpz_t(), 2) + 7) / 8;
  if (x == 0)
    bytes = 0;
  if (bytes > width)
    throw std::invalid_argument("integer too large for fixed width");
  Bytes out(width, 0);
  size_t written = 0;
  if (bytes > 0)
    mpz_export(out.data() + (width - bytes), &written, 1, 1, 1, 0, x.get_mpz_t());
  return out;
}

// Jacobian coordinates: (X, Y, Z) is the affine point (X/Z^2, Y/Z^3).
struct Jacobian
{
  mpz_class x;
  mpz_class y;
  mpz_class z; // zero at infinity
};

Jacobian
twice(const Jacobian& t)
{
  if (t.z == 0 || t.y == 0)
    return {};
  mpz_class yy = modP(t.y * t.y);
  mpz_class zz = modP(t.z * t.z);
  mpz_class m = modP(3 * t.x * t.x + zz * zz);
  mpz_class s = modP(4 * t.x * yy);
  Jacobian out;
  out.x = modP(m * m - 2 * s);
  out.y = modP(m * (s - out.x) - 8 * yy * yy);
  out.z = modP(2 * t.y * t.z);
  return out;
}

Jacobian
addAffine(const Jacobian& t, const Point& p)
{
  if (p.infinity)
    return t;
  if (t.z == 0)
    return {p.x, p.y, 1};
  mpz_class zz = modP(t.z * t.z);
  mpz_class h = modP(p.x * zz - t.x);
  mpz_class r = modP(p.y * zz * t.z - t.y);
  if (h == 0)
    return r == 0 ? twice(t) : Jacobian{};
  mpz_class hh = modP(h * h);
  mpz_class hhh = modP(hh * h);
  mpz_class v = modP(t.x * hh);
  Jacobian out;
  out.x = modP(r * r - hhh - 2 * v);
  out.y = modP(r * (v - out.x) - t.y * hhh);
  out.z = modP(t.z * h);
  return out;
}

Point
toAffine(const Jacobian& t)
{
  if (t.z == 0)
    return Point::identity();
  mpz_class zi = invP(t.z);
  mpz_class zi2 = modP(zi * zi);
  return {modP(t.x * zi2), modP(t.y * zi2 * zi), false};
}

} // namespace

const CurveParams&
params()
{
  static const CurveParams params = [] {
    CurveParams c;
    c.p = mpz_class("a59bb7b9cbdf8b04cf225a52a1d0e26bdd5943ed36c1f62c32867ea0ba6597e3"
                    "a7fe45be62620d1b7a0ff321e72c1d200f0988d26053927d7e144f6eedcc5b83", 16);
    c.r = mpz_class("aea4ead8ab33c878baadc3353c681cee43532a37", 16);
    c.cofactor = mpz_class("f2c139bd649d8a89df0ed1e5cb8857c70a992b2b58c022bd672f3b0d3bfa91a0"
                           "7cf8577a60abace6535d6e9c", 16);
    return c;
  }();
  return params;
}

Fp2
mul(const Fp2& x, const Fp2& y)
{
  return {modP(x.a * y.a - x.b * y.b), modP(x.a * y.b + x.b * y.a)};
}

Fp2
square(const Fp2& x)
{
  // (a + bi)^2 = (a + b)(a - b) + 2ab i
  return {modP((x.a + x.b) * (x.a - x.b)), modP(2 * x.a * x.b)};
}

Fp2
conjugate(const Fp2& x)
{
  return {x.a, modP(-x.b)};
}

Fp2
inverse(const Fp2& x)
{
  mpz_class norm = modP(x.a * x.a + x.b * x.b);
  mpz_class ninv = invP(norm);
  return {modP(x.a * ninv), modP(-x.b * ninv)};
}

Fp2
pow(const Fp2& x, const mpz_class& e)
{
  Fp2 result = Fp2::one();
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    result = square(result);
    if (mpz_tstbit(e.get_mpz_t(), i))
      result = mul(result, x);
  }
  return result;
}

bool
isOnCurve(const Point& pt)
{
  if (pt.infinity)
    return true;
  if (pt.x < 0 || pt.x >= P() || pt.y < 0 || pt.y >= P())
    return false;
  return modP(pt.y * pt.y) == modP(pt.x * pt.x * pt.x + pt.x);
}

Point
negate(const Point& a)
{
  if (a.infinity)
    return a;
  return {a.x, modP(-a.y), false};
}

Point
add(const Point& a, const Point& b)
{
  if (a.infinity)
    return b;
  if (b.infinity)
    return a;
  mpz_class lambda;
  if (a.x == b.x) {
    if (modP(a.y + b.y) == 0)
      return Point::identity();
    lambda = modP((3 * a.x * a.x + 1) * invP(2 * a.y));
  }
  else {
    lambda = modP((b.y - a.y) * invP(modP(b.x - a.x)));
  }
  mpz_class x3 = modP(lambda * lambda - a.x - b.x);
  mpz_class y3 = modP(lambda * (a.x - x3) - a.y);
  return {x3, y3, false};
}

Point
mul(const Point& a, const mpz_class& k)
{
  if (k == 0 || a.infinity)
    return Point::identity();
  mpz_class e = k;
  Point base = a;
  if (e < 0) {
    e = -e;
    base = negate(base);
  }
  Jacobian acc;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    acc = twice(acc);
    if (mpz_tstbit(e.get_mpz_t(), i))
      acc = addAffine(acc, base);
  }
  return toAffine(acc);
}

Point
hashToG1(ByteView data)
{
  const mpz_class sqrtExp = (P() + 1) / 4;
  for (uint32_t counter = 0;; ++counter) {
    Bytes block = toBytes("nac-typea-h2g1");
    for (int shift = 24; shift >= 0; shift -= 8)
      block.push_back(static_cast<uint8_t>(counter >> shift));
    append(block, data);
    auto d1 = sha256(block);
    block.push_back(0x01);
    auto d2 = sha256(block);
    block.push_back(0x02);
    auto d3 = sha256(block);
    Bytes wide(d1.begin(), d1.end());
    wide.insert(wide.end(), d2.begin(), d2.end());
    wide.insert(wide.end(), d3.begin(), d3.end());

    mpz_class x = modP(fromBytes(wide));
    mpz_class rhs = modP(x * x * x + x);
    if (rhs == 0 || mpz_legendre(rhs.get_mpz_t(), P().get_mpz_t()) != 1)
      continue;
    mpz_class y;
    mpz_powm(y.get_mpz_t(), rhs.get_mpz_t(), sqrtExp.get_mpz_t(), P().get_mpz_t());
    if (y > P() - y)
      y = P() - y;
    Point pt = mul(Point{x, y, false}, params().cofactor);
    if (!pt.infinity)
      return pt;
  }
}

mpz_class
randomZr(Rng& rng)
{
  Bytes b = rng.bytes(32);
  mpz_class x = fromBytes(b);
  mpz_class out;
  mpz_mod(out.get_mpz_t(), x.get_mpz_t(), params().r.get_mpz_t());
  if (out == 0)
    out = 1;
  return out;
}

namespace {

// Miller loop for f_{r,P} evaluated at the distortion image of Q. T is kept
// in Jacobian form; each line is scaled by a nonzero F_p factor, and those
// factors, like the vertical-line denominators, vanish in the final
// exponentiation.
Fp2
millerLoop(const Point& p, const Point& q)
{
  const mpz_class& r = params().r;
  Fp2 f = Fp2::one();
  Jacobian t{p.x, p.y, 1};
  size_t bits = mpz_sizeinbase(r.get_mpz_t(), 2);
  for (size_t i = bits - 1; i-- > 0;) {
    // tangent at T: (3X^2 + Z^4)(xQ Z^2 + X) - 2Y^2 + i yQ 2Y Z^3
    mpz_class zz = modP(t.z * t.z);
    mpz_class m = modP(3 * t.x * t.x + zz * zz);
    mpz_class real = modP(m * (q.x * zz + t.x) - 2 * t.y * t.y);
    Jacobian doubled = twice(t);
    f = mul(square(f), Fp2{real, modP(q.y * doubled.z * zz)});
    t = doubled;

    if (mpz_tstbit(r.get_mpz_t(), i)) {
      zz = modP(t.z * t.z);
      mpz_class h = modP(p.x * zz - t.x);
      if (h == 0) {
        // T == -P: the chord is vertical
        t = {};
        continue;
      }
      // chord through T and P: R(xQ Z^2 + X) - Y H + i yQ Z^3 H
      mpz_class rr = modP(p.y * zz * t.z - t.y);
      real = modP(rr * (q.x * zz + t.x) - t.y * h);
      Jacobian sum = addAffine(t, p);
      f = mul(f, Fp2{real, modP(q.y * sum.z * zz)});
      t = sum;
    }
  }
  return f;
}

// f^((p^2 - 1) / r) = (conj(f) / f)^((p + 1) / r)
Fp2
finalExponentiation(const Fp2& f)
{
  return pow(mul(conjugate(f), inverse(f)), params().cofactor);
}

} // namespace

Fp2
pairing(const Point& p, const Point& q)
{
  if (p.infinity || q.infinity)
    return Fp2::one();
  return finalExponentiation(millerLoop(p, q));
}

Fp2
pairingProduct(const std::vector<std::pair<Point, Point>>& pairs)
{
  Fp2 f = Fp2::one();
  for (const auto& [p, q] : pairs) {
    if (p.infinity || q.infinity)
      continue;
    f = mul(f, millerLoop(p, q));
  }
  return finalExponentiation(f);
}

Fp2
pairingPowProduct(const std::vector<PairingTerm>& terms)
{
  // exponents act on Miller values directly: the final exponentiation is a
  // homomorphism onto a group of order r
  Fp2 f = Fp2::one();
  for (const auto& term : terms) {
    if (term.p.infinity || term.q.infinity)
      continue;
    mpz_class e;
    mpz_mod(e.get_mpz_t(), term.exponent.get_mpz_t(), params().r.get_mpz_t());
    f = mul(f, pow(millerLoop(term.p, term.q), e));
  }
  return finalExponentiation(f);
}

Bytes
encodePoint(const Point& pt)
{
  if (pt.infinity)
    return Bytes(G1_BYTES, 0);
  Bytes out = toFixed(pt.x, FIELD_BYTES);
  append(out, toFixed(pt.y, FIELD_BYTES));
  return out;
}

Point
decodePoint(ByteView bytes)
{
  if (bytes.size() != G1_BYTES)
    throw std::invalid_argument("G1 element must be 128 bytes");
  Point pt{fromBytes(bytes.first(FIELD_BYTES)), fromBytes(bytes.subspan(FIELD_BYTES)), false};
  if (pt.x == 0 && pt.y == 0)
    return Point::identity();
  if (!isOnCurve(pt))
    throw std::invalid_argument("point not on curve");
  return pt;
}

Bytes
encodeGt(const Fp2& x)
{
  Bytes out = toFixed(x.a, FIELD_BYTES);
  append(out, toFixed(x.b, FIELD_BYTES));
  return out;
}

Fp2
decodeGt(ByteView bytes)
{
  if (bytes.size() != GT_BYTES)
    throw std::invalid_argument("GT element must be 128 bytes");
  Fp2 x{fromBytes(bytes.first(FIELD_BYTES)), fromBytes(bytes.subspan(FIELD_BYTES))};
  if (x.a >= P() || x.b >= P())
    throw std::invalid_argument("GT coordinate out of range");
  return x;
}

Bytes
encodeZr(const mpz_class& x)
{
  return toFixed(x, ZR_BYTES);
}

mpz_class
decodeZr(ByteView bytes)
{
  if (bytes.size() != ZR_BYTES)
    throw std::invalid_argument("Z_r element must be 20 bytes");
  mpz_class x = fromBytes(bytes);
  if (x >= params().r)
    throw std::invalid_argument("Z_r element out of range");
  return x;
}

} // namespace nac::crypto::typea
