#pragma once

#include "starweb/choice.hpp"
#include "starweb/cover.hpp"
#include "starweb/cube.hpp"
#include "starweb/errors.hpp"
#include "starweb/format.hpp"
#include "starweb/oracle.hpp"
#include "starweb/random_cover.hpp"
#include "starweb/setmap.hpp"
#include "starweb/space.hpp"
#include "starweb/witness.hpp"
