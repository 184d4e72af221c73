// Umbrella header.

#ifndef ALIASRES_ALIASRES_HPP
#define ALIASRES_ALIASRES_HPP

#include "aliasres/alias_table.hpp"
#include "aliasres/canon_rules.hpp"
#include "aliasres/conll.hpp"
#include "aliasres/fixtures.hpp"
#include "aliasres/graph.hpp"
#include "aliasres/listing.hpp"
#include "aliasres/resolver.hpp"
#include "aliasres/types.hpp"
#include "aliasres/validation.hpp"

#endif
