#ifndef DAGFIX_REVLANG_HPP
#define DAGFIX_REVLANG_HPP

#include "dagfix/rvl/denote.hpp"
#include "dagfix/rvl/eval.hpp"
#include "dagfix/rvl/invert.hpp"
#include "dagfix/rvl/parser.hpp"
#include "dagfix/rvl/roundtrip.hpp"
#include "dagfix/rvl/syntax.hpp"
#include "dagfix/rvl/validate.hpp"
#include "dagfix/rvl/value.hpp"

#endif
