#pragma once

#include "orwell/alphabet.hpp"
#include "orwell/automata.hpp"
#include "orwell/interference.hpp"
#include "orwell/model_format.hpp"
#include "orwell/observation.hpp"
#include "orwell/opacity.hpp"
#include "orwell/oracle.hpp"
#include "orwell/reductions.hpp"
#include "orwell/regex.hpp"
