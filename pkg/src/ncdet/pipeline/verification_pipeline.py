from typing import List

from ncdet import logger
from ncdet.components.verification import IdentityVerification
from ncdet.config.configuration import ConfigurationManager
from ncdet.entity.report_entity import RunReport

STAGE_NAME = "Identity verification stage"


class VerificationPipeline:
    def __init__(self):
        pass

    def initiate_verification(self) -> List[RunReport]:
        config = ConfigurationManager()
        reports = []
        for plan in config.get_suite_plans():
            for n in plan.n_values:
                verification_config = config.get_verification_config(
                    plan.suite, n, trials=plan.trials, scalar=plan.scalar.value
                )
                verification = IdentityVerification(config=verification_config)
                report = verification.run()
                if verification_config.save_report:
                    verification.save_report(report)
                reports.append(report)
        return reports


if __name__ == "__main__":
    try:
        logger.info(f">>>>>> stage {STAGE_NAME} started <<<<<<")
        obj = VerificationPipeline()
        obj.initiate_verification()
        logger.info(f">>>>>> stage {STAGE_NAME} completed <<<<<<\n\nx==========x")
    except Exception as e:
        logger.exception(e)
        raise e
