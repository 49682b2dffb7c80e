#ifndef HYPERPIC_HYPERPIC_HPP
#define HYPERPIC_HYPERPIC_HPP

// Everything except the CLI front end.

#include "hyperpic/arith.hpp"
#include "hyperpic/autom.hpp"
#include "hyperpic/binform.hpp"
#include "hyperpic/embed.hpp"
#include "hyperpic/error.hpp"
#include "hyperpic/experiments.hpp"
#include "hyperpic/field.hpp"
#include "hyperpic/picard.hpp"
#include "hyperpic/poly.hpp"
#include "hyperpic/projline.hpp"
#include "hyperpic/rng.hpp"

#endif  // HYPERPIC_HYPERPIC_HPP
