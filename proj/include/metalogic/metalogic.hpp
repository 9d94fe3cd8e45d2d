#pragma once

#include "metalogic/alphabet.hpp"
#include "metalogic/analysis.hpp"
#include "metalogic/automaton.hpp"
#include "metalogic/engine.hpp"
#include "metalogic/formula.hpp"
#include "metalogic/language.hpp"
#include "metalogic/library.hpp"
#include "metalogic/parser.hpp"
#include "metalogic/rules.hpp"
#include "metalogic/schema.hpp"
#include "metalogic/semantics.hpp"
