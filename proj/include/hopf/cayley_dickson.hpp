#pragma once

#include "hopf/cayley_dickson/element.hpp"
#include "hopf/cayley_dickson/identities.hpp"
#include "hopf/cayley_dickson/table.hpp"
