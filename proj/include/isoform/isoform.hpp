#pragma once

#include "isoform/canonical_blocks.hpp"
#include "isoform/decompose.hpp"
#include "isoform/errors.hpp"
#include "isoform/identities.hpp"
#include "isoform/jordan.hpp"
#include "isoform/matrix.hpp"
#include "isoform/modular.hpp"
#include "isoform/pair.hpp"
#include "isoform/phi_epsilon.hpp"
#include "isoform/polynomial.hpp"
#include "isoform/roots.hpp"
#include "isoform/scalars.hpp"
