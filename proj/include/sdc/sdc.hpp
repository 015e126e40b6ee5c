#pragma once

#include "sdc/code.hpp"
#include "sdc/construct.hpp"
#include "sdc/error.hpp"
#include "sdc/gf2.hpp"
#include "sdc/gmodule.hpp"
#include "sdc/io.hpp"
#include "sdc/perm.hpp"
#include "sdc/poly.hpp"
#include "sdc/verify.hpp"
