#pragma once

#include "chevflag/errors.hpp"
#include "chevflag/finite_field.hpp"
#include "chevflag/coefficient_field.hpp"
#include "chevflag/linalg.hpp"
#include "chevflag/rootsys.hpp"
#include "chevflag/structure_constants.hpp"
#include "chevflag/chevalley.hpp"
#include "chevflag/matrix_model.hpp"
#include "chevflag/flagmod.hpp"
#include "chevflag/rewriting.hpp"
#include "chevflag/ejmodule.hpp"
#include "chevflag/selfenc.hpp"
#include "chevflag/augment.hpp"
#include "chevflag/charp.hpp"
#include "chevflag/modengine.hpp"
#include "chevflag/suites.hpp"
