// Umbrella header.
#ifndef NSDIAL_NSDIAL_HPP
#define NSDIAL_NSDIAL_HPP

#include "nsdial/extract.hpp"
#include "nsdial/fixtures.hpp"
#include "nsdial/gen.hpp"
#include "nsdial/suites.hpp"
#include "nsdial/oracle.hpp"
#include "nsdial/proof.hpp"
#include "nsdial/reduce.hpp"
#include "nsdial/sexpr.hpp"
#include "nsdial/translate.hpp"

#endif
