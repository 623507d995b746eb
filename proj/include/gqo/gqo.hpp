#pragma once

#include "gqo/error.hpp"
#include "gqo/operator_core.hpp"
#include "gqo/random.hpp"
#include "gqo/state_model.hpp"
#include "gqo/observable_model.hpp"
#include "gqo/born_rule.hpp"
#include "gqo/representability.hpp"
#include "gqo/transition.hpp"
