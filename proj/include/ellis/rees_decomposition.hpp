// The normalised Rees matrix form of a finite completely simple
// transformation semigroup S with respect to an idempotent e.
//
// R-classes are indexed by I and L-classes by Lambda; r_i is the idempotent
// of H(i, lambda0) and q_lambda the idempotent of H(i0, lambda), where
// (i0, lambda0) is the H-class of e. The group is H_e, acting faithfully on
// the image of e, and a(lambda, i) = q_lambda r_i. The embedding is
// (i, g, lambda) -> r_i g q_lambda.

#ifndef ELLIS_REES_DECOMPOSITION_HPP_
#define ELLIS_REES_DECOMPOSITION_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "perm_group.hpp"
#include "rees.hpp"
#include "transformation.hpp"

namespace ellis {

  struct ReesDecomposition {
    ReesMatrixSemigroup semigroup;
    std::size_t         e;        // index of e in S
    std::size_t         i0;
    std::size_t         lambda0;
    std::vector<std::size_t> r;   // S index of r_i
    std::vector<std::size_t> q;   // S index of q_lambda
    // The points of im(e), in increasing order. Group elements permute
    // positions in this list.
    std::vector<FiberSelfMap::point_type> image_points;
    std::vector<ReesElement>              elements;  // semigroup.elements()
    std::vector<std::size_t>              image;     // S index of each
  };

  namespace detail {
    inline std::string serialize_map(FiberSelfMap const& f) {
      std::string out = "[";
      for (std::size_t k = 0; k < f.degree(); ++k) {
        out += (k ? "," : "") + std::to_string(f(k));
      }
      return out + "]";
    }
  }  // namespace detail

  inline ReesDecomposition rees_decomposition(TransformationSemigroup const& S,
                                              GreenStructure const&          gs,
                                              std::size_t                    e) {
    if (!is_completely_simple(S, gs)) {
      throw ValidationError("Rees decomposition needs a completely simple "
                            "semigroup");
    }
    if (e >= S.size() || S.product(e, e) != e) {
      throw ValidationError("Rees decomposition needs an idempotent");
    }
    ReesDecomposition out;
    out.e                  = e;
    std::size_t const le   = gs.l_class_of[e];
    std::size_t const re   = gs.r_class_of[e];

    // the unique idempotent in the H-class (R-class rc, L-class lc)
    auto idempotent_at = [&](std::size_t rc, std::size_t lc) {
      std::vector<std::size_t> found;
      for (auto x : gs.idempotents) {
        if (gs.r_class_of[x] == rc && gs.l_class_of[x] == lc) {
          found.push_back(x);
        }
      }
      if (found.size() != 1) {
        throw InternalError("H-class of a completely simple semigroup holds "
                            + std::to_string(found.size())
                            + " idempotents");
      }
      return found.front();
    };

    // I and Lambda ordered by their idempotents (S is sorted, so by index)
    std::vector<std::pair<std::size_t, std::size_t>> rows, cols;
    for (std::size_t rc = 0; rc < gs.r_classes.size(); ++rc) {
      rows.emplace_back(idempotent_at(rc, le), rc);
    }
    for (std::size_t lc = 0; lc < gs.l_classes.size(); ++lc) {
      cols.emplace_back(idempotent_at(re, lc), lc);
    }
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    std::vector<std::string> i_labels, lambda_labels;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      out.r.push_back(rows[k].first);
      i_labels.push_back(detail::serialize_map(S.at(rows[k].first)));
      if (rows[k].second == re) {
        out.i0 = k;
      }
    }
    for (std::size_t k = 0; k < cols.size(); ++k) {
      out.q.push_back(cols[k].first);
      lambda_labels.push_back(detail::serialize_map(S.at(cols[k].first)));
      if (cols[k].second == le) {
        out.lambda0 = k;
      }
    }

    out.image_points = S.at(e).image_set();
    std::map<FiberSelfMap::point_type, letter_type> pos;
    for (std::size_t k = 0; k < out.image_points.size(); ++k) {
      pos[out.image_points[k]] = static_cast<letter_type>(k);
    }
    auto restrict_to_image = [&](std::size_t x) {
      std::vector<letter_type> im;
      for (auto p : out.image_points) {
        auto it = pos.find(S.at(x)(p));
        if (it == pos.end()) {
          throw InternalError("element of the H-class of e leaves im(e)");
        }
        im.push_back(it->second);
      }
      return Permutation(std::move(im));
    };

    std::map<Permutation, std::size_t> from_perm;
    std::vector<Permutation>           group_elements;
    for (auto x : gs.h_classes[gs.h_class_of[e]]) {
      auto p = restrict_to_image(x);
      if (!from_perm.emplace(p, x).second) {
        throw InternalError("H-class of e does not act faithfully on im(e)");
      }
      group_elements.push_back(std::move(p));
    }
    auto G = closure(group_elements, out.image_points.size());
    detail::check_internal(G.order() == group_elements.size(),
                           "H-class of e is not closed under composition");

    SandwichMatrix A(out.q.size());
    for (std::size_t l = 0; l < out.q.size(); ++l) {
      for (std::size_t i = 0; i < out.r.size(); ++i) {
        A[l].push_back(restrict_to_image(S.product(out.q[l], out.r[i])));
      }
    }
    out.semigroup = ReesMatrixSemigroup(std::move(G), std::move(i_labels),
                                        std::move(lambda_labels), std::move(A));
    out.elements = out.semigroup.elements();
    for (auto const& x : out.elements) {
      auto const h = from_perm.at(x.g);
      out.image.push_back(S.product(S.product(out.r[x.i], h), out.q[x.lambda]));
    }
    return out;
  }

  inline ReesDecomposition rees_decomposition(TransformationSemigroup const& S,
                                              std::size_t                    e) {
    return rees_decomposition(S, green_structure(S), e);
  }

  inline bool verify_rees_isomorphism(TransformationSemigroup const& S,
                                      ReesDecomposition const&       d) {
    return verify_rees_isomorphism(S, d.semigroup, d.elements, d.image);
  }

}  // namespace ellis

#endif  // ELLIS_REES_DECOMPOSITION_HPP_
