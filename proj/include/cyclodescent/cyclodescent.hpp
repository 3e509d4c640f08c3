#pragma once

// Umbrella header: exact Galois descent for representations of finite groups
// over cyclotomic fields.

#include "catalog.hpp"
#include "character.hpp"
#include "cyclotomic.hpp"
#include "descent.hpp"
#include "dixon.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "hilbert.hpp"
#include "json_io.hpp"
#include "loewy.hpp"
#include "matrix.hpp"
#include "numtheory.hpp"
#include "rational.hpp"
#include "representation.hpp"
#include "restriction.hpp"
#include "subfield.hpp"
