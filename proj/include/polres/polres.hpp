#pragma once

#include "polres/ordering.hpp"
#include "polres/problem.hpp"
#include "polres/proof_io.hpp"
#include "polres/prop.hpp"
#include "polres/rewrite.hpp"
#include "polres/saturation.hpp"
#include "polres/sequent.hpp"
#include "polres/subst.hpp"
#include "polres/term.hpp"
#include "polres/workbench.hpp"
