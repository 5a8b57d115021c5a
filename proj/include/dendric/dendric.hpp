#pragma once

#include "dendric/freegroup.hpp"
#include "dendric/language.hpp"
#include "dendric/rauzy.hpp"
#include "dendric/returns.hpp"
#include "dendric/tame.hpp"
#include "dendric/words.hpp"
