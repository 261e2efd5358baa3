use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use samelson::bicomplex::Bicomplex;
use samelson::hermflow::StandardManifold;
use samelson::liealg::{
    builtin_model, derive_structure_equations, isotropic_parameter, standard_structure, structure_with_parameter, ComplexStructureChoice,
    LieAlgebraModel, StructureSign, BUILTIN_MODELS,
};
use samelson::{Error, FieldElement};
use serde::Serialize;

/// `--model`: a builtin name, `file:PATH`, or a path ending in `.json`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "source", content = "value", rename_all = "snake_case")]
pub enum ModelSpec {
    Builtin(String),
    File(PathBuf),
}

impl FromStr for ModelSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(ModelSpec::File(path.into()));
        }
        if s.ends_with(".json") {
            return Ok(ModelSpec::File(s.into()));
        }
        if BUILTIN_MODELS.contains(&s) {
            return Ok(ModelSpec::Builtin(s.to_string()));
        }
        Err(format!("unknown model `{s}`; expected one of {} or file:PATH", BUILTIN_MODELS.join(", ")))
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Builtin(name) => f.write_str(name),
            ModelSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

/// `--structure`: `plus`, `minus`, or a torus parameter `a,b` with `b ≠ 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureSpec {
    IsotropicPlus,
    IsotropicMinus,
    Parameter(String, String),
}

impl FromStr for StructureSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plus" | "+" | "isotropic_plus" => Ok(StructureSpec::IsotropicPlus),
            "minus" | "-" | "isotropic_minus" => Ok(StructureSpec::IsotropicMinus),
            _ => {
                let (a, b) = s.split_once(',').ok_or_else(|| format!("expected plus, minus or a,b; got `{s}`"))?;
                let parse = |x: &str| x.trim().parse::<FieldElement>().map_err(|e| e.to_string());
                if parse(b)?.is_zero() {
                    return Err("the torus parameter needs b ≠ 0".into());
                }
                parse(a)?;
                Ok(StructureSpec::Parameter(a.trim().to_string(), b.trim().to_string()))
            }
        }
    }
}

impl StructureSpec {
    fn sign(&self) -> Option<StructureSign> {
        match self {
            StructureSpec::IsotropicPlus => Some(StructureSign::Plus),
            StructureSpec::IsotropicMinus => Some(StructureSign::Minus),
            StructureSpec::Parameter(..) => None,
        }
    }
}

/// Resolved model plus the structure to use on it.
pub struct Setup {
    pub spec: ModelSpec,
    pub structure: Option<StructureSpec>,
    pub model: LieAlgebraModel,
}

impl Setup {
    pub fn new(spec: &ModelSpec, structure: Option<&StructureSpec>) -> Result<Self, Error> {
        let model = match spec {
            ModelSpec::Builtin(name) => builtin_model(name)?,
            ModelSpec::File(path) => LieAlgebraModel::load(path)?,
        };
        let structure = structure.cloned().or(match spec {
            ModelSpec::Builtin(_) => Some(StructureSpec::IsotropicPlus),
            ModelSpec::File(_) => None,
        });
        if let (ModelSpec::Builtin(name), Some(sign)) = (spec, structure.as_ref().and_then(StructureSpec::sign)) {
            isotropic_parameter(name, sign)?;
        }
        Ok(Setup { spec: spec.clone(), structure, model })
    }

    pub fn label(&self) -> String {
        match &self.spec {
            ModelSpec::Builtin(name) => name.clone(),
            ModelSpec::File(_) => self.model.name().to_string(),
        }
    }

    pub fn structure_choice(&self) -> Result<ComplexStructureChoice, Error> {
        match &self.structure {
            None => Err(Error::Structure("file models need --structure a,b".into())),
            Some(StructureSpec::Parameter(a, b)) => structure_with_parameter(&self.model, a.parse()?, b.parse()?),
            Some(s) => standard_structure(&self.model, s.sign().expect("isotropic")),
        }
    }

    pub fn bicomplex(&self) -> Result<Bicomplex, Error> {
        Ok(Bicomplex::new(derive_structure_equations(&self.structure_choice()?)?))
    }

    /// Builtin model with one of its isotropic structures, which fixes `ω_BF`.
    pub fn standard(&self) -> Result<StandardManifold, Error> {
        match (&self.spec, self.structure.as_ref().and_then(StructureSpec::sign)) {
            (ModelSpec::Builtin(name), Some(sign)) => StandardManifold::new(name, sign),
            _ => Err(Error::Structure("the bi-invariant metric is available for builtin isotropic structures only".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_specs() {
        assert_eq!("su3".parse::<ModelSpec>().unwrap(), ModelSpec::Builtin("su3".into()));
        assert_eq!("file:x.json".parse::<ModelSpec>().unwrap(), ModelSpec::File("x.json".into()));
        assert_eq!("y.json".parse::<ModelSpec>().unwrap(), ModelSpec::File("y.json".into()));
        assert!("e8".parse::<ModelSpec>().is_err());
    }

    #[test]
    fn structure_specs() {
        assert_eq!("minus".parse::<StructureSpec>().unwrap(), StructureSpec::IsotropicMinus);
        assert_eq!("0, -1".parse::<StructureSpec>().unwrap(), StructureSpec::Parameter("0".into(), "-1".into()));
        assert!("1,0".parse::<StructureSpec>().is_err());
        assert!("sideways".parse::<StructureSpec>().is_err());
    }

    #[test]
    fn su3_minus_is_rejected() {
        assert!(Setup::new(&ModelSpec::Builtin("su3".into()), Some(&StructureSpec::IsotropicMinus)).is_err());
    }

    #[test]
    fn parameter_structure_on_builtin() {
        let s = Setup::new(&ModelSpec::Builtin("su3".into()), Some(&"1,2".parse().unwrap())).unwrap();
        assert_eq!(s.bicomplex().unwrap().n(), 4);
        assert!(s.standard().is_err());
    }
}
