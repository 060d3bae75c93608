#pragma once

#include "fosf/closure.hpp"
#include "fosf/degree.hpp"
#include "fosf/errors.hpp"
#include "fosf/graph.hpp"
#include "fosf/interpretation.hpp"
#include "fosf/lattice.hpp"
#include "fosf/morphism.hpp"
#include "fosf/normalize.hpp"
#include "fosf/ontology.hpp"
#include "fosf/signature.hpp"
#include "fosf/similarity.hpp"
#include "fosf/subsumption.hpp"
#include "fosf/syntax.hpp"
#include "fosf/term.hpp"
#include "fosf/unify.hpp"
#include "fosf/union_find.hpp"
