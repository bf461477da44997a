#pragma once

#include "rational.hpp"
#include "rng.hpp"
#include "cover.hpp"
#include "entropy.hpp"
#include "fourterm.hpp"
#include "loops.hpp"
#include "formal.hpp"
#include "certificates.hpp"
#include "asymptotics.hpp"
