#pragma once

#include <vector>

#include "gosc/mp.hpp"
#include "gosc/recurrence.hpp"

// Internal quadrature rules. Not part of the stable interface.
namespace gosc::quad {

struct Node {
    double x, dl, dr, w;
};

struct MpNode {
    mp::Real x, dl, dr, w;
};

// Double-exponential rule on [lo, hi] with step 2^-level: tanh-sinh for finite intervals,
// exp-sinh for half-lines, sinh-sinh for the real line. dl and dr are the distances to the
// endpoints (infinite for an infinite end). Nodes with x or w not finite are dropped.
std::vector<Node> de_nodes(double lo, double hi, int level);
std::vector<MpNode> de_nodes_mp(double lo, double hi, int level, long bits);

// Gauss-Legendre nodes and weights on [-1, 1].
struct MpRule {
    std::vector<mp::Real> x, w;
};
MpRule gauss_legendre_mp(int n, long bits);

struct Rule {
    std::vector<double> x, w;
};
Rule gauss_legendre(int n);

// n-point Gauss rule of the measure with the given Jacobi matrix (Golub-Welsch).
Rule gauss_rule(const RecurrenceCoefficients& c, int n);

}  // namespace gosc::quad
