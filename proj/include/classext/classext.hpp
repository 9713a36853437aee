#pragma once

#include "classext/integer.hpp"
#include "classext/intlat.hpp"
#include "classext/quadratic.hpp"
#include "classext/quad_ideal.hpp"
#include "classext/forms.hpp"
#include "classext/abelian_group.hpp"
#include "classext/algebra.hpp"
#include "classext/alg_ext.hpp"
#include "classext/shapes.hpp"
#include "classext/classgroup.hpp"
#include "classext/json_io.hpp"
#include "classext/verify.hpp"
#include "classext/torsor.hpp"
#include "classext/corpus.hpp"
#include "classext/suite.hpp"
