import pandas as pd

from ncdet import logger
from ncdet.components.report_summary import VerificationSummary
from ncdet.config.configuration import ConfigurationManager

STAGE_NAME = "Summary evaluation stage"


class EvaluationPipeline:
    def __init__(self):
        pass

    def initiate_evaluation(self) -> pd.DataFrame:
        config = ConfigurationManager()
        evaluation_config = config.get_evaluation_config()
        summary = VerificationSummary(config=evaluation_config)
        return summary.save_summary()


if __name__ == "__main__":
    try:
        logger.info(f">>>>>> stage {STAGE_NAME} started <<<<<<")
        obj = EvaluationPipeline()
        obj.initiate_evaluation()
        logger.info(f">>>>>> stage {STAGE_NAME} completed <<<<<<\n\nx==========x")
    except Exception as e:
        logger.exception(e)
        raise e
