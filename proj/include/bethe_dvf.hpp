#pragma once

#include "bethe_dvf/errors.hpp"
#include "bethe_dvf/rational.hpp"
#include "bethe_dvf/symbolic.hpp"
#include "bethe_dvf/identity.hpp"
#include "bethe_dvf/root_systems.hpp"
#include "bethe_dvf/tableaux.hpp"
#include "bethe_dvf/dvf.hpp"
#include "bethe_dvf/json_io.hpp"
#include "bethe_dvf/bae.hpp"
#include "bethe_dvf/relations.hpp"
#include "bethe_dvf/verify.hpp"
