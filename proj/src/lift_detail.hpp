#pragma once
// Helpers shared by the eigenvalue and singular-value lifts.

#include "spectral/lift.hpp"

namespace spectral::detail {

/// Snap w entrywise, move it onto aff(P) exactly, then apply the test.
/// Containment allows an l-infinity slack of tol*(1 + |w|); ri/rb are
/// decided exactly on the snapped point.
bool vector_test(const GenPolyhedron& p, const Vec& w, SubdiffTest which, double tol);

/// Rational with the snapped-or-exact rule used for spectra.
Rational snap_or_exact(double v, double tol);

/// q (a rounded spectrum of the float spectrum v) moved exactly onto the
/// face of epi f that v touches up to tol: pieces within rounding of the
/// maximum are tied and nearly tight constraints made tight. Returns q
/// unchanged when that point leaves dom f or moves beyond rounding scale.
QVec snap_to_face(const MaxAffineFn& f, const QVec& q, const Vec& v, double tol);

/// f at the float spectrum `v`, +inf when the rounded spectrum `q` is
/// outside dom f.
double value_at(const MaxAffineFn& f, const QVec& q, const Vec& v);

}  // namespace spectral::detail
