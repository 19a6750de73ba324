// Everything at once.

#ifndef ELLIS_ELLIS_HPP_
#define ELLIS_ELLIS_HPP_

#include "complexity.hpp"
#include "error.hpp"
#include "golden.hpp"
#include "perm_group.hpp"
#include "permutation.hpp"
#include "rees.hpp"
#include "rees_decomposition.hpp"
#include "report.hpp"
#include "structural.hpp"
#include "substitution.hpp"
#include "transformation.hpp"
#include "window_oracle.hpp"

#define ELLIS_VERSION "1.0.0"

#endif  // ELLIS_ELLIS_HPP_
