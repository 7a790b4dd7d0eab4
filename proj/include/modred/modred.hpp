#pragma once

#include "modred/badprimes.hpp"
#include "modred/dynamics.hpp"
#include "modred/eliminant.hpp"
#include "modred/errors.hpp"
#include "modred/finitefield.hpp"
#include "modred/heights.hpp"
#include "modred/linalg.hpp"
#include "modred/nullsatz.hpp"
#include "modred/orbitstats.hpp"
#include "modred/parallel.hpp"
#include "modred/points.hpp"
#include "modred/poly.hpp"
#include "modred/polyalg.hpp"
#include "modred/primes.hpp"
#include "modred/ratfunc.hpp"
#include "modred/ring.hpp"
#include "modred/sysparse.hpp"
#include "modred/version.hpp"
