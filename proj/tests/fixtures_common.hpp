#pragma once

#include "silt/algebra.hpp"

/* The three quiver algebras the examples revolve around, built directly.
 *
 * eximp: 3-cycle 1 ->a 2 ->b 3 ->c 1 with rad^2 = 0 (dim 6, self-injective).
 * ejp1:  arrows a: 1->2, b,c: 2->3, d: 3->1, relations ba, ad, dc (dim 9).
 * radsq3: arrows a,b: 1->2, c: 2->3, d: 3->1 with rad^2 = 0 (dim 7).
 * a3:    1 ->a 2 ->b 3 with relation ba (dim 5); this is Gamma_M of eximp.
 */

template <class F>
silt::QuiverPresentation<F> eximp_quiver(F f) {
    silt::QuiverPresentation<F> q{f, {"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}, {"c", 2, 0}}, {}, 2};
    q.relations.push_back({{{f.one(), {0, 1}}}});  // ba
    q.relations.push_back({{{f.one(), {1, 2}}}});  // cb
    q.relations.push_back({{{f.one(), {2, 0}}}});  // ac
    return q;
}

template <class F>
silt::QuiverPresentation<F> ejp1_quiver(F f) {
    silt::QuiverPresentation<F> q{
        f, {"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}, {"c", 1, 2}, {"d", 2, 0}}, {}, 3};
    q.relations.push_back({{{f.one(), {0, 1}}}});  // ba
    q.relations.push_back({{{f.one(), {3, 0}}}});  // ad
    q.relations.push_back({{{f.one(), {2, 3}}}});  // dc
    return q;
}

template <class F>
silt::QuiverPresentation<F> radsq3_quiver(F f) {
    silt::QuiverPresentation<F> q{
        f, {"1", "2", "3"}, {{"a", 0, 1}, {"b", 0, 1}, {"c", 1, 2}, {"d", 2, 0}}, {}, 2};
    q.relations.push_back({{{f.one(), {0, 2}}}});  // ca
    q.relations.push_back({{{f.one(), {1, 2}}}});  // cb
    q.relations.push_back({{{f.one(), {2, 3}}}});  // dc
    q.relations.push_back({{{f.one(), {3, 0}}}});  // ad
    q.relations.push_back({{{f.one(), {3, 1}}}});  // bd
    return q;
}

template <class F>
silt::QuiverPresentation<F> a3_quiver(F f) {
    silt::QuiverPresentation<F> q{f, {"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}}, {}, 2};
    q.relations.push_back({{{f.one(), {0, 1}}}});  // ba
    return q;
}
